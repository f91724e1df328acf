#include "slag/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slag/errors.hpp"

namespace slag {

namespace {

// Thomas solve of a tridiagonal system with the given bands (a sub,
// b diag, c super).  b is consumed as workspace.
void solve_tridiagonal(std::vector<double>& a, std::vector<double>& b,
                       std::vector<double>& c, std::vector<double>& rhs) {
  const size_t n = b.size();
  for (size_t k = 1; k < n; ++k) {
    const double m = a[k] / b[k - 1];
    b[k] -= m * c[k - 1];
    rhs[k] -= m * rhs[k - 1];
  }
  rhs[n - 1] /= b[n - 1];
  for (size_t k = n - 1; k-- > 0;) {
    rhs[k] = (rhs[k] - c[k] * rhs[k + 1]) / b[k];
  }
}

// Cyclic tridiagonal solve (Sherman-Morrison on the two corner entries
// alpha = A[0][n-1], beta = A[n-1][0]).  Solves in place for both
// coordinate right-hand sides.
void solve_cyclic(const std::vector<double>& sub, const std::vector<double>& diag,
                  const std::vector<double>& sup, double alpha, double beta,
                  std::vector<double>& rhs_x, std::vector<double>& rhs_y) {
  const size_t n = diag.size();
  const double gamma = -diag[0];
  std::vector<double> b(diag);
  b[0] = diag[0] - gamma;
  b[n - 1] = diag[n - 1] - alpha * beta / gamma;
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = beta;

  std::vector<double> a1(sub), c1(sup), bx(b), by(b), bz(b);
  std::vector<double> z(u);
  solve_tridiagonal(a1, bz, c1, z);
  a1 = sub; c1 = sup;
  solve_tridiagonal(a1, bx, c1, rhs_x);
  a1 = sub; c1 = sup;
  solve_tridiagonal(a1, by, c1, rhs_y);

  const double denom = 1.0 + z[0] + (alpha / gamma) * z[n - 1];
  const double fx = (rhs_x[0] + (alpha / gamma) * rhs_x[n - 1]) / denom;
  const double fy = (rhs_y[0] + (alpha / gamma) * rhs_y[n - 1]) / denom;
  for (size_t k = 0; k < n; ++k) {
    rhs_x[k] -= fx * z[k];
    rhs_y[k] -= fy * z[k];
  }
}

void check_mesh(const DiscreteCurve& curve, double min_edge_fraction) {
  if (min_edge_fraction <= 0.0) return;
  if (curve.min_edge_length() < min_edge_fraction * curve.mean_edge_length()) {
    throw RefinementRequired("resample required: degenerate edge");
  }
}

}  // namespace

void FlowConfig::validate() const {
  if (!(step_safety > 0.0 && step_safety <= 1.0)) {
    throw std::invalid_argument("FlowConfig: step_safety must be in (0, 1]");
  }
  if (resample_every < 1) {
    throw std::invalid_argument("FlowConfig: resample_every must be >= 1");
  }
  if (!(max_time > 0.0) || !(convergence_phase_spread > 0.0) ||
      !(moment_tolerance > 0.0) || !(min_edge_fraction > 0.0)) {
    throw std::invalid_argument("FlowConfig: fields must be positive");
  }
}

std::vector<Vec2> curvature_vectors(const DiscreteCurve& curve) {
  const int n = curve.size();
  std::vector<Vec2> kappa(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const int prev = (k + n - 1) % n;
    const Vec2 e_prev = curve.edge_vector(prev);
    const Vec2 e_next = curve.edge_vector(k);
    const double lp = e_prev.norm();
    const double ln = e_next.norm();
    kappa[static_cast<size_t>(k)] =
        (2.0 / (lp + ln)) * ((1.0 / ln) * e_next - (1.0 / lp) * e_prev);
  }
  return kappa;
}

DiscreteCurve mcf_step_explicit(const DiscreteCurve& curve, double dt) {
  const double h = curve.min_edge_length();
  if (dt > h * h) {
    throw std::invalid_argument("mcf_step_explicit: dt exceeds (min edge)^2");
  }
  const std::vector<Vec2> kappa = curvature_vectors(curve);
  std::vector<Vec2> vertices = curve.vertices();
  for (size_t k = 0; k < vertices.size(); ++k) {
    vertices[k] += dt * kappa[k];
  }
  return DiscreteCurve::build_with_lift_hint(std::move(vertices),
                                             curve.closure(), curve.geometry(),
                                             curve.theta(0), curve.holonomy());
}

DiscreteCurve mcf_step(const DiscreteCurve& curve, double dt,
                       double min_edge_fraction) {
  check_mesh(curve, min_edge_fraction);
  const int n = curve.size();
  std::vector<double> sub(static_cast<size_t>(n)), diag(static_cast<size_t>(n)),
      sup(static_cast<size_t>(n));
  std::vector<double> rx(static_cast<size_t>(n)), ry(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const int prev = (k + n - 1) % n;
    const double lp = curve.edge_length(prev);
    const double ln = curve.edge_length(k);
    const double a = 2.0 / ((lp + ln) * lp);  // weight of v_{k-1}
    const double c = 2.0 / ((lp + ln) * ln);  // weight of v_{k+1}
    sub[static_cast<size_t>(k)] = -dt * a;
    sup[static_cast<size_t>(k)] = -dt * c;
    diag[static_cast<size_t>(k)] = 1.0 + dt * (a + c);
    rx[static_cast<size_t>(k)] = curve.vertex(k).x;
    ry[static_cast<size_t>(k)] = curve.vertex(k).y;
  }
  // Periodic wrap through the closure translation T:
  // v_{-1} = v_{n-1} - T and v_n = v_0 + T move constant terms to the RHS.
  const Vec2 t = curve.closing_translation();
  const double a0 = -sub[0] / dt;       // recover weights
  const double cn = -sup[static_cast<size_t>(n - 1)] / dt;
  rx[0] -= dt * a0 * t.x;
  ry[0] -= dt * a0 * t.y;
  rx[static_cast<size_t>(n - 1)] += dt * cn * t.x;
  ry[static_cast<size_t>(n - 1)] += dt * cn * t.y;

  solve_cyclic(sub, diag, sup, sub[0], sup[static_cast<size_t>(n - 1)], rx, ry);

  std::vector<Vec2> vertices(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    vertices[static_cast<size_t>(k)] = {rx[static_cast<size_t>(k)],
                                        ry[static_cast<size_t>(k)]};
  }
  return DiscreteCurve::build_with_lift_hint(std::move(vertices),
                                             curve.closure(), curve.geometry(),
                                             curve.theta(0), curve.holonomy());
}

FlowResult run_flow(const DiscreteCurve& curve, const FlowConfig& config) {
  config.validate();
  FlowResult result(curve);

  if (!curve.is_embedded()) {
    result.warnings.push_back(
        "initial curve is not embedded; convergence not guaranteed");
  }

  const bool gradeable = curve.maslov() == 0;
  if (!gradeable) {
    result.warnings.push_back("nonzero Maslov class; no line limit exists");
  }
  const double initial_length = curve.length();
  const double singular_floor = 1e-3 * std::max(1.0, initial_length);
  const bool contractible = curve.closure() == std::array<int, 2>{0, 0};

  double phi = 0.0;
  if (gradeable) {
    phi = curve.average_phase();
    const double excursion =
        std::max(std::abs(*std::max_element(curve.theta_lift().begin(),
                                            curve.theta_lift().end()) -
                          phi),
                 std::abs(phi - *std::min_element(curve.theta_lift().begin(),
                                                  curve.theta_lift().end())));
    if (excursion > 0.5 * kPi) {
      result.warnings.push_back("phase excursion exceeds pi/2");
    }
  }

  DiscreteCurve current = curve;
  double time = 0.0;
  double cumulative_flux = 0.0;
  int steps = 0;

  // Resampling is the identity up to hamiltonian isotopy; cancel its
  // inscribed-sliver area with a normal micro-translation so the
  // recorded flux tracks the flow alone.
  auto resample_flux_neutral = [&](const DiscreteCurve& c) {
    DiscreteCurve r = c.resampled_uniform(c.size());
    const Vec2 t = c.closing_translation();
    const double period = t.norm();
    if (period > 0.0) {
      const double f = flux_step(c, r);
      const Vec2 normal{-t.y / period, t.x / period};
      r = r.translated((-f / period) * normal);
    }
    cumulative_flux += flux_step(c, r);
    return r;
  };

  auto record = [&](double at) {
    DiagnosticsSample s;
    s.time = at;
    s.length = current.length();
    s.phase_mean = gradeable ? current.average_phase() : 0.0;
    s.phase_spread = current.phase_spread();
    s.moment_norm = gradeable ? current.moment_norm() : 0.0;
    s.cumulative_flux = cumulative_flux;
    if (gradeable) {
      for (double t : current.theta_lift()) {
        s.phase_max_dev = std::max(s.phase_max_dev, std::abs(t - s.phase_mean));
      }
    }
    result.diagnostics.append(s);
  };

  auto converged = [&]() {
    if (!gradeable || contractible) return false;
    if (current.phase_spread() >= config.convergence_phase_spread) return false;
    if (current.moment_norm() >= config.moment_tolerance) return false;
    const double target = current.closing_translation().norm();
    return std::abs(current.length() - target) <= 1e-3 * target;
  };

  record(0.0);

  if (converged()) {
    result.status = FlowStatus::converged_to_line;
    result.line_class = current.closure();
    result.final_curve = current;
    return result;
  }

  while (time < config.max_time) {
    // Mesh maintenance.
    if (steps > 0 && steps % config.resample_every == 0) {
      current = resample_flux_neutral(current);
    }
    if (current.min_edge_length() <
        config.min_edge_fraction * current.mean_edge_length()) {
      current = resample_flux_neutral(current);
    }
    const double h = current.min_edge_length();
    if (contractible && current.length() < singular_floor) {
      result.status = FlowStatus::singular;
      break;
    }

    const double dt = config.step_safety * h * h;
    if (!(dt > 0.0) || !std::isfinite(dt)) {
      result.status = FlowStatus::singular;
      break;
    }
    DiscreteCurve next = [&]() {
      try {
        return mcf_step(current, dt, 0.05);
      } catch (const RefinementRequired&) {
        current = resample_flux_neutral(current);
        return mcf_step(current, dt, 0.0);
      }
    }();
    cumulative_flux += flux_step(current, next);
    current = std::move(next);
    time += dt;
    ++steps;
    record(time);

    if (converged()) {
      result.status = FlowStatus::converged_to_line;
      result.line_class = current.closure();
      break;
    }
  }

  result.final_curve = current;
  result.elapsed_time = time;
  result.steps = steps;
  return result;
}

}  // namespace slag
