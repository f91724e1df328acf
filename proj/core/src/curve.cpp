#include "slag/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "slag/errors.hpp"

namespace slag {

namespace {

constexpr double kClosureTol = 1e-12;
constexpr double kMinEdge = 1e-12;

std::vector<Vec2> edge_vectors(std::span<const Vec2> vertices,
                               std::array<int, 2> closure,
                               const TorusCY& geometry) {
  const size_t n = vertices.size();
  std::vector<Vec2> edges(n);
  for (size_t k = 0; k + 1 < n; ++k) edges[k] = vertices[k + 1] - vertices[k];
  edges[n - 1] = vertices[0] + geometry.lattice_vector(closure[0], closure[1]) -
                 vertices[n - 1];
  return edges;
}

}  // namespace

std::vector<double> theta_lift_compute(std::span<const Vec2> vertices,
                                       std::array<int, 2> closure,
                                       const TorusCY& geometry) {
  const size_t n = vertices.size();
  if (n < 3) throw std::invalid_argument("theta_lift_compute: need N >= 3");
  const std::vector<Vec2> edges = edge_vectors(vertices, closure, geometry);
  std::vector<double> raw(n);
  for (size_t k = 0; k < n; ++k) {
    if (edges[k].norm() <= kMinEdge) {
      throw std::invalid_argument("theta_lift_compute: zero-length edge " +
                                  std::to_string(k));
    }
    raw[k] = std::atan2(edges[k].y, edges[k].x) - geometry.alpha();
  }
  std::vector<double> lift(n);
  lift[0] = wrap_principal(raw[0]);
  for (size_t k = 0; k + 1 < n; ++k) {
    const double turn = wrap_principal(raw[k + 1] - raw[k]);
    if (std::abs(turn) >= 0.5 * kPi) {
      throw RefinementRequired(
          "refinement required: tangent turn >= pi/2 at edge " +
          std::to_string(k + 1));
    }
    lift[k + 1] = lift[k] + turn;
  }
  const double closing_turn = wrap_principal(raw[0] - raw[n - 1]);
  if (std::abs(closing_turn) >= 0.5 * kPi) {
    throw RefinementRequired(
        "refinement required: tangent turn >= pi/2 at the closing edge");
  }
  return lift;
}

DiscreteCurve DiscreteCurve::build(std::vector<Vec2> vertices,
                                   std::array<int, 2> closure,
                                   const TorusCY& geometry,
                                   std::optional<double> holonomy) {
  DiscreteCurve c;
  c.geometry_ = geometry;
  c.closure_ = closure;
  c.holonomy_ = holonomy;
  if (holonomy && (*holonomy < 0.0 || *holonomy >= kTwoPi)) {
    throw std::invalid_argument("DiscreteCurve: holonomy must lie in [0, 2pi)");
  }
  if (vertices.size() < 3) {
    throw std::invalid_argument("DiscreteCurve: need at least 3 vertices");
  }
  c.vertices_ = std::move(vertices);
  c.theta_lift_ = theta_lift_compute(c.vertices_, closure, geometry);

  // Winding of the lift closed up through the final turn.
  const std::vector<Vec2> edges = edge_vectors(c.vertices_, closure, geometry);
  const double raw0 = std::atan2(edges[0].y, edges[0].x) - geometry.alpha();
  const double rawn =
      std::atan2(edges.back().y, edges.back().x) - geometry.alpha();
  const double total =
      (c.theta_lift_.back() + wrap_principal(raw0 - rawn)) - c.theta_lift_[0];
  const double w = total / kTwoPi;
  c.maslov_ = static_cast<int>(std::lround(w));
  if (std::abs(w - c.maslov_) > 1e-6) {
    throw std::logic_error("DiscreteCurve: non-integer phase winding");
  }
  return c;
}

DiscreteCurve DiscreteCurve::build_with_lift_hint(
    std::vector<Vec2> vertices, std::array<int, 2> closure,
    const TorusCY& geometry, double lift_hint,
    std::optional<double> holonomy) {
  DiscreteCurve c = build(std::move(vertices), closure, geometry, holonomy);
  const double shift =
      kTwoPi * std::round((lift_hint - c.theta_lift_[0]) / kTwoPi);
  if (shift != 0.0) {
    for (double& t : c.theta_lift_) t += shift;
  }
  return c;
}

Vec2 DiscreteCurve::edge_vector(int k) const {
  const size_t n = vertices_.size();
  const size_t i = static_cast<size_t>(k);
  if (i + 1 < n) return vertices_[i + 1] - vertices_[i];
  return vertices_[0] + closing_translation() - vertices_[n - 1];
}

double DiscreteCurve::length() const {
  double s = 0.0;
  for (int k = 0; k < size(); ++k) s += edge_length(k);
  return s;
}

double DiscreteCurve::min_edge_length() const {
  double m = edge_length(0);
  for (int k = 1; k < size(); ++k) m = std::min(m, edge_length(k));
  return m;
}

double DiscreteCurve::average_phase() const {
  if (maslov_ != 0) {
    throw GradingError("average_phase: Maslov class " +
                       std::to_string(maslov_) + " != 0, phase not gradeable");
  }
  const auto [lo, hi] =
      std::minmax_element(theta_lift_.begin(), theta_lift_.end());
  const double centre = 0.5 * (*lo + *hi);
  const double raw =
      std::arg(omega_integral(closure_[0], closure_[1], geometry_));
  return raw + kTwoPi * std::round((centre - raw) / kTwoPi);
}

double DiscreteCurve::phase_spread() const {
  const auto [lo, hi] =
      std::minmax_element(theta_lift_.begin(), theta_lift_.end());
  return *hi - *lo;
}

double DiscreteCurve::moment_norm() const {
  const double phi = average_phase();
  double s = 0.0;
  for (int k = 0; k < size(); ++k) {
    const double d = std::sin(theta(k) - phi);
    s += d * d * edge_length(k);
  }
  return s;
}

DiscreteCurve DiscreteCurve::with_grading_shift(int m) const {
  DiscreteCurve c(*this);
  const double shift = static_cast<double>(m) * kPi;
  if (m % 2 == 0) {
    for (double& t : c.theta_lift_) t += shift;
    return c;
  }
  // Odd shift reverses the traversal: new vertex i is old vertex N-1-i,
  // new edge i is the reversal of old edge N-2-i (closing edge stays last).
  const int n = size();
  for (int i = 0; i < n; ++i) c.vertices_[i] = vertices_[static_cast<size_t>(n - 1 - i)];
  c.closure_ = {-closure_[0], -closure_[1]};
  for (int i = 0; i < n; ++i) {
    const int src = (n - 2 - i + n) % n;
    c.theta_lift_[static_cast<size_t>(i)] = theta_lift_[static_cast<size_t>(src)] + shift;
  }
  c.maslov_ = -maslov_;
  return c;
}

DiscreteCurve DiscreteCurve::resampled_uniform(int n) const {
  if (n < 3) throw std::invalid_argument("resampled_uniform: need n >= 3");
  const double total = length();
  std::vector<Vec2> out;
  out.reserve(static_cast<size_t>(n));
  const double step = total / n;
  double target = 0.0;
  double acc = 0.0;
  int edge = 0;
  double edge_len = edge_length(0);
  Vec2 a = vertices_[0];
  Vec2 b = a + edge_vector(0);
  for (int j = 0; j < n; ++j) {
    target = step * j;
    while (acc + edge_len < target && edge + 1 < size()) {
      acc += edge_len;
      ++edge;
      a = vertices_[static_cast<size_t>(edge)];
      b = a + edge_vector(edge);
      edge_len = edge_length(edge);
    }
    const double t = std::clamp((target - acc) / edge_len, 0.0, 1.0);
    out.push_back(a + t * (b - a));
  }
  return build_with_lift_hint(std::move(out), closure_, geometry_,
                              theta_lift_[0], holonomy_);
}

DiscreteCurve DiscreteCurve::translated(Vec2 t) const {
  DiscreteCurve c(*this);
  for (Vec2& v : c.vertices_) v += t;
  return c;
}

bool DiscreteCurve::is_embedded() const {
  // Compare every edge pair over the lattice translates that can reach
  // the curve's bounding box.
  const int n = size();
  std::vector<Vec2> starts(static_cast<size_t>(n));
  std::vector<Vec2> dirs(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    starts[static_cast<size_t>(k)] = vertices_[static_cast<size_t>(k)];
    dirs[static_cast<size_t>(k)] = edge_vector(k);
  }
  Vec2 lo = geometry_.to_lattice(starts[0]);
  Vec2 hi = lo;
  for (int k = 0; k < n; ++k) {
    for (Vec2 pt : {starts[static_cast<size_t>(k)],
                    starts[static_cast<size_t>(k)] + dirs[static_cast<size_t>(k)]}) {
      const Vec2 c = geometry_.to_lattice(pt);
      lo.x = std::min(lo.x, c.x); lo.y = std::min(lo.y, c.y);
      hi.x = std::max(hi.x, c.x); hi.y = std::max(hi.y, c.y);
    }
  }
  const int mx = static_cast<int>(std::ceil(hi.x - lo.x)) + 1;
  const int my = static_cast<int>(std::ceil(hi.y - lo.y)) + 1;
  const double eps = 1e-10;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int tx = -mx; tx <= mx; ++tx) {
        for (int ty = -my; ty <= my; ++ty) {
          if (i == j && tx == 0 && ty == 0) continue;
          const Vec2 shift = geometry_.lattice_vector(tx, ty);
          const Vec2 p = starts[static_cast<size_t>(i)];
          const Vec2 r = dirs[static_cast<size_t>(i)];
          const Vec2 q = starts[static_cast<size_t>(j)] + shift;
          const Vec2 s = dirs[static_cast<size_t>(j)];
          const double den = cross(r, s);
          const Vec2 pq = q - p;
          if (std::abs(den) < 1e-14 * r.norm() * s.norm()) {
            if (std::abs(cross(pq, r)) > eps * r.norm()) continue;
            // Collinear: overlap test along r (endpoint touches allowed).
            const double rr = dot(r, r);
            double t0 = dot(pq, r) / rr;
            double t1 = t0 + dot(s, r) / rr;
            if (t1 < t0) std::swap(t0, t1);
            if (t1 > eps && t0 < 1.0 - eps) return false;
            continue;
          }
          const double t = cross(pq, s) / den;
          const double u = cross(pq, r) / den;
          if (t < -eps || t > 1.0 + eps || u < -eps || u > 1.0 + eps) continue;
          // Contact at a genuinely shared polygon vertex is allowed:
          // end of edge i meeting start of edge i+1, including the wrap
          // from the closing edge back to edge 0.
          const bool end_i_start_j = t >= 1.0 - eps && u <= eps &&
                                     j == i + 1 && tx == 0 && ty == 0;
          const bool end_j_start_i = u >= 1.0 - eps && t <= eps && i == 0 &&
                                     j == n - 1 && tx == -closure_[0] &&
                                     ty == -closure_[1];
          if (end_i_start_j || end_j_start_i) continue;
          return false;
        }
      }
    }
  }
  return true;
}

double weighted_metric(const DiscreteCurve& curve, std::span<const double> a,
                       std::span<const double> b) {
  const size_t n = static_cast<size_t>(curve.size());
  if (a.size() != n || b.size() != n) {
    throw std::invalid_argument("weighted_metric: samples must be per edge");
  }
  const double phi = curve.average_phase();
  double s = 0.0;
  for (size_t k = 0; k < n; ++k) {
    // a*b grouped first so the sum is symmetric bit for bit.
    s += std::cos(curve.theta(static_cast<int>(k)) - phi) * (a[k] * b[k]) *
         curve.edge_length(static_cast<int>(k));
  }
  return s;
}

double flux_step(const DiscreteCurve& from, const DiscreteCurve& to) {
  if (from.size() != to.size() || from.closure() != to.closure() ||
      !(from.geometry() == to.geometry())) {
    throw std::invalid_argument("flux: correspondence mismatch");
  }
  const double limit = 0.5 * from.geometry().injectivity_radius();
  const int n = from.size();
  double area = 0.0;
  const Vec2 ta = from.closing_translation();
  for (int k = 0; k < n; ++k) {
    const Vec2 a0 = from.vertex(k);
    const Vec2 a1 = (k + 1 < n) ? from.vertex(k + 1) : from.vertex(0) + ta;
    const Vec2 b0 = to.vertex(k);
    const Vec2 b1 = (k + 1 < n) ? to.vertex(k + 1) : to.vertex(0) + ta;
    if ((b0 - a0).norm() > limit) {
      throw std::invalid_argument(
          "flux: displacement exceeds half the injectivity radius");
    }
    // Signed shoelace area of the quad a0 -> a1 -> b1 -> b0.
    area += 0.5 * (cross(a0, a1) + cross(a1, b1) + cross(b1, b0) +
                   cross(b0, a0));
  }
  return area;
}

double flux(std::span<const DiscreteCurve> history) {
  double total = 0.0;
  for (size_t i = 0; i + 1 < history.size(); ++i) {
    total += flux_step(history[i], history[i + 1]);
  }
  return total;
}

void FlowDiagnostics::append(const DiagnosticsSample& s) {
  if (!samples.empty() && !(s.time > samples.back().time)) {
    throw std::invalid_argument("FlowDiagnostics: times must strictly increase");
  }
  samples.push_back(s);
}

}  // namespace slag
