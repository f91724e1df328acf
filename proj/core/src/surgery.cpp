#include "slag/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "slag/errors.hpp"

namespace slag {

namespace {

struct ArcWalker {
  const DiscreteCurve* curve;
  std::vector<double> prefix;  // arclength at each vertex, prefix[N] = total
  double total = 0.0;

  explicit ArcWalker(const DiscreteCurve& c) : curve(&c) {
    const int n = c.size();
    prefix.resize(static_cast<size_t>(n) + 1, 0.0);
    for (int k = 0; k < n; ++k) prefix[static_cast<size_t>(k) + 1] =
        prefix[static_cast<size_t>(k)] + c.edge_length(k);
    total = prefix.back();
  }

  // Edge index containing arclength s (s reduced mod total).
  int edge_at(double s) const {
    const double r = s - total * std::floor(s / total);
    const auto it = std::upper_bound(prefix.begin(), prefix.end(), r);
    int k = static_cast<int>(it - prefix.begin()) - 1;
    return std::clamp(k, 0, curve->size() - 1);
  }

  // Point at arclength s in the universal cover; s >= total continues
  // through the closure translation.
  Vec2 point_at(double s) const {
    const double wraps = std::floor(s / total);
    const double r = s - total * wraps;
    const int k = edge_at(r);
    const double t = (r - prefix[static_cast<size_t>(k)]) /
                     (prefix[static_cast<size_t>(k) + 1] - prefix[static_cast<size_t>(k)]);
    return curve->vertex(k) + t * curve->edge_vector(k) +
           wraps * curve->closing_translation();
  }

  Vec2 direction_at(double s) const {
    const int k = edge_at(s);
    const Vec2 e = curve->edge_vector(k);
    return (1.0 / e.norm()) * e;
  }

  double theta_at(double s) const { return curve->theta(edge_at(s)); }

  // Polyline from arclength a to b (b > a), including both endpoints and
  // the original vertices strictly inside.
  std::vector<Vec2> sample(double a, double b) const {
    std::vector<Vec2> out;
    out.push_back(point_at(a));
    const double eps = 1e-9 * total;
    // Visit every vertex arclength in (a, b).
    double base = total * std::floor(a / total);
    for (double offset = base;; offset += total) {
      bool advanced = false;
      for (size_t k = 0; k < prefix.size() - 1; ++k) {
        const double s = prefix[k] + offset;
        if (s <= a + eps) continue;
        if (s >= b - eps) { advanced = true; break; }
        Vec2 p = point_at(s);
        if ((p - out.back()).norm() > eps) out.push_back(p);
      }
      if (advanced || offset > b) break;
    }
    Vec2 last = point_at(b);
    if ((last - out.back()).norm() <= eps && out.size() > 1) out.pop_back();
    out.push_back(last);
    return out;
  }
};

// Cubic Bezier bridging A (tangent ta) to B (tangent tb); the interior
// samples replace the crossing with a monotone-turning neck.
std::vector<Vec2> neck_points(Vec2 a, Vec2 ta, Vec2 b, Vec2 tb, double handle,
                              int samples) {
  const Vec2 c1 = a + handle * ta;
  const Vec2 c2 = b - handle * tb;
  std::vector<Vec2> out;
  out.reserve(static_cast<size_t>(samples));
  for (int i = 1; i <= samples; ++i) {
    const double t = static_cast<double>(i) / (samples + 1);
    const double u = 1.0 - t;
    const Vec2 p = (u * u * u) * a + (3.0 * u * u * t) * c1 +
                   (3.0 * u * t * t) * c2 + (t * t * t) * b;
    out.push_back(p);
  }
  return out;
}

double torus_distance(const TorusCY& geometry, Vec2 a, Vec2 b) {
  double best = (a - b).norm();
  for (int tx = -1; tx <= 1; ++tx) {
    for (int ty = -1; ty <= 1; ++ty) {
      best = std::min(best, (a - b - geometry.lattice_vector(tx, ty)).norm());
    }
  }
  return best;
}

}  // namespace

std::vector<IntersectionPoint> intersections(const DiscreteCurve& c1,
                                             const DiscreteCurve& c2) {
  if (!(c1.geometry() == c2.geometry())) {
    throw std::invalid_argument("intersections: curves on different tori");
  }
  const TorusCY& geom = c1.geometry();
  const ArcWalker w1(c1), w2(c2);

  // Lattice-coordinate bounding boxes decide which translates of c2's
  // lift can reach each edge of c1's lift.
  auto lattice_box = [&](const DiscreteCurve& c) {
    Vec2 lo = geom.to_lattice(c.vertex(0));
    Vec2 hi = lo;
    for (int k = 0; k < c.size(); ++k) {
      for (Vec2 p : {c.vertex(k), c.vertex(k) + c.edge_vector(k)}) {
        const Vec2 t = geom.to_lattice(p);
        lo.x = std::min(lo.x, t.x); lo.y = std::min(lo.y, t.y);
        hi.x = std::max(hi.x, t.x); hi.y = std::max(hi.y, t.y);
      }
    }
    return std::pair<Vec2, Vec2>(lo, hi);
  };
  const auto [lo1, hi1] = lattice_box(c1);
  const auto [lo2, hi2] = lattice_box(c2);
  const int mx_lo = static_cast<int>(std::floor(lo1.x - hi2.x)) - 1;
  const int mx_hi = static_cast<int>(std::ceil(hi1.x - lo2.x)) + 1;
  const int my_lo = static_cast<int>(std::floor(lo1.y - hi2.y)) - 1;
  const int my_hi = static_cast<int>(std::ceil(hi1.y - lo2.y)) + 1;

  std::vector<IntersectionPoint> points;
  const double eps = 1e-12;
  for (int i = 0; i < c1.size(); ++i) {
    const Vec2 p = c1.vertex(i);
    const Vec2 r = c1.edge_vector(i);
    for (int j = 0; j < c2.size(); ++j) {
      const Vec2 q0 = c2.vertex(j);
      const Vec2 s = c2.edge_vector(j);
      const double den = cross(r, s);
      for (int tx = mx_lo; tx <= mx_hi; ++tx) {
        for (int ty = my_lo; ty <= my_hi; ++ty) {
          const Vec2 q = q0 + geom.lattice_vector(tx, ty);
          const Vec2 pq = q - p;
          if (std::abs(den) < 1e-14 * r.norm() * s.norm()) {
            // Parallel: reject overlapping segments.
            if (std::abs(cross(pq, r)) > 1e-12 * r.norm()) continue;
            const double rr = dot(r, r);
            double t0 = dot(pq, r) / rr;
            double t1 = t0 + dot(s, r) / rr;
            if (t1 < t0) std::swap(t0, t1);
            if (t1 > eps && t0 < 1.0 - eps) {
              throw ParallelIntersection(
                  "clean/parallel intersection not supported");
            }
            continue;
          }
          const double t = cross(pq, s) / den;
          const double u = cross(pq, r) / den;
          if (t < -eps || t >= 1.0 - eps || u < -eps || u >= 1.0 - eps) {
            continue;  // half-open convention: hits live on the edge start
          }
          IntersectionPoint pt;
          const Vec2 hit = p + t * r;
          pt.location = geom.reduce(hit);
          pt.edge_c1 = i;
          pt.edge_c2 = j;
          pt.crossing_sign = den > 0.0 ? 1 : -1;
          pt.theta1 = c1.theta(i);
          pt.theta2 = c2.theta(j);
          pt.s_on_c1 = w1.prefix[static_cast<size_t>(i)] + t * r.norm();
          pt.s_on_c2 = w2.prefix[static_cast<size_t>(j)] + u * s.norm();
          pt.translate = {tx, ty};
          points.push_back(pt);
        }
      }
    }
  }
  std::sort(points.begin(), points.end(),
            [](const IntersectionPoint& a, const IntersectionPoint& b) {
              return a.s_on_c1 < b.s_on_c1;
            });
  return points;
}

bool grading_compatible(double phi1, double phi2) {
  const double d = phi2 - phi1;
  return d > 0.0 && d < kPi;
}

std::array<int, 2> CurveSystem::total_closure() const {
  std::array<int, 2> total{0, 0};
  for (const DiscreteCurve& c : components) {
    total[0] += c.closure()[0];
    total[1] += c.closure()[1];
  }
  return total;
}

double CurveSystem::total_length() const {
  double s = 0.0;
  for (const DiscreteCurve& c : components) s += c.length();
  return s;
}

double CurveSystem::average_phase() const {
  if (components.empty()) throw std::invalid_argument("empty curve system");
  const auto [p, q] = total_closure();
  double lo = components[0].theta(0);
  double hi = lo;
  for (const DiscreteCurve& c : components) {
    for (double t : c.theta_lift()) {
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  const double centre = 0.5 * (lo + hi);
  const double raw = std::arg(omega_integral(p, q, components[0].geometry()));
  return raw + kTwoPi * std::round((centre - raw) / kTwoPi);
}

const DiscreteCurve& CurveSystem::single() const {
  if (components.size() != 1) {
    throw std::logic_error("connect sum resolved into " +
                           std::to_string(components.size()) +
                           " components, not 1");
  }
  return components[0];
}

CurveSystem connect_sum(const DiscreteCurve& c1, const DiscreteCurve& c2,
                        const NeckParameters& necks) {
  if (c1.maslov() != 0 || c2.maslov() != 0) {
    throw GradingError("graded sum does not exist: nonzero Maslov class");
  }
  std::vector<IntersectionPoint> pts = intersections(c1, c2);
  if (pts.empty()) {
    throw std::invalid_argument("connect_sum: curves do not intersect");
  }
  if (necks.scales.size() != pts.size()) {
    throw std::invalid_argument("connect_sum: need one neck scale per point");
  }
  for (size_t i = 0; i < pts.size(); ++i) {
    if (!(necks.scales[i] > 0.0)) {
      throw std::invalid_argument("connect_sum: neck scales must be positive");
    }
    if (!grading_compatible(pts[i].theta1, pts[i].theta2)) {
      throw GradingError(
          "graded sum does not exist: phase window violated at point " +
          std::to_string(i) + " (theta1=" + std::to_string(pts[i].theta1) +
          ", theta2=" + std::to_string(pts[i].theta2) + ")");
    }
  }

  // Neck supports must stay clear of each other.
  const TorusCY& geom = c1.geometry();
  if (pts.size() >= 2) {
    double min_dist = std::numeric_limits<double>::max();
    for (size_t i = 0; i < pts.size(); ++i) {
      for (size_t j = i + 1; j < pts.size(); ++j) {
        min_dist = std::min(
            min_dist, torus_distance(geom, pts[i].location, pts[j].location));
      }
    }
    for (double s : necks.scales) {
      if (!(s < 0.5 * min_dist)) {
        throw std::invalid_argument("connect_sum: necks too large");
      }
    }
  }

  const ArcWalker w1(c1), w2(c2);
  const size_t np = pts.size();

  // Cut windows along each curve must be disjoint.
  auto check_windows = [&](const ArcWalker& w, auto s_of) {
    std::vector<size_t> order(np);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return s_of(a) < s_of(b);
    });
    for (size_t k = 0; k < np; ++k) {
      const size_t a = order[k];
      const size_t b = order[(k + 1) % np];
      double gap = s_of(b) - s_of(a);
      if (k + 1 == np) gap += w.total;
      if (!(necks.scales[a] + necks.scales[b] < gap)) {
        throw std::invalid_argument("connect_sum: necks too large");
      }
    }
    return order;
  };
  const std::vector<size_t> order1 =
      check_windows(w1, [&](size_t i) { return pts[i].s_on_c1; });
  const std::vector<size_t> order2 =
      check_windows(w2, [&](size_t i) { return pts[i].s_on_c2; });

  std::vector<size_t> next1(np), next2(np);
  for (size_t k = 0; k < np; ++k) {
    next1[order1[k]] = order1[(k + 1) % np];
    next2[order2[k]] = order2[(k + 1) % np];
  }

  constexpr int kNeckSamples = 15;

  // Walk the resolution: incoming c1 switches to outgoing c2 and vice
  // versa at every point.  State (i, on_c1) = about to traverse the
  // strand that leaves point i.
  std::vector<bool> visited1(np, false), visited2(np, false);
  CurveSystem out;

  for (size_t start = 0; start < np; ++start) {
    if (visited1[start]) continue;
    std::vector<Vec2> verts;
    size_t point = start;
    bool on_c1 = true;
    const double h_start = necks.scales[start];
    const Vec2 first_pos = w1.point_at(pts[start].s_on_c1 + h_start);
    Vec2 cursor = first_pos;
    const double lift_hint = w1.theta_at(pts[start].s_on_c1 + h_start);
    bool done = false;

    while (!done) {
      if (on_c1) visited1[point] = true; else visited2[point] = true;
      const ArcWalker& w = on_c1 ? w1 : w2;
      const double s_here = on_c1 ? pts[point].s_on_c1 : pts[point].s_on_c2;
      const size_t nxt = on_c1 ? next1[point] : next2[point];
      double s_next = on_c1 ? pts[nxt].s_on_c1 : pts[nxt].s_on_c2;
      if (s_next <= s_here) s_next += w.total;

      const double h_here = necks.scales[point];
      const double h_next = necks.scales[nxt];
      // Strand from just after this point to just before the next.
      std::vector<Vec2> arc = w.sample(s_here + h_here, s_next - h_next);
      const Vec2 offset = cursor - arc.front();
      for (Vec2& v : arc) v += offset;
      if (!verts.empty() && (verts.back() - arc.front()).norm() < 1e-12) {
        verts.pop_back();
      }
      verts.insert(verts.end(), arc.begin(), arc.end());

      // Crossing position in the component frame.
      const Vec2 crossing = w.point_at(s_next) + offset;
      const Vec2 tan_in = w.direction_at(s_next - h_next);

      // Switch curves; place the other strand so it passes through the
      // crossing.
      const ArcWalker& wo = on_c1 ? w2 : w1;
      const double s_other = on_c1 ? pts[nxt].s_on_c2 : pts[nxt].s_on_c1;
      const Vec2 other_offset = crossing - wo.point_at(s_other);
      const Vec2 exit_point = wo.point_at(s_other + h_next) + other_offset;
      const Vec2 tan_out = wo.direction_at(s_other + h_next);

      const std::vector<Vec2> neck =
          neck_points(verts.back(), tan_in, exit_point, tan_out,
                      0.5 * h_next, kNeckSamples);
      verts.insert(verts.end(), neck.begin(), neck.end());

      point = nxt;
      on_c1 = !on_c1;
      cursor = exit_point;
      if (point == start && on_c1) done = true;
    }

    // The walk closed; the final neck ends at first vertex + lattice shift.
    const Vec2 gap = cursor - first_pos;
    const Vec2 lat = geom.to_lattice(gap);
    const std::array<int, 2> closure{static_cast<int>(std::lround(lat.x)),
                                     static_cast<int>(std::lround(lat.y))};
    const Vec2 residual =
        gap - geom.lattice_vector(closure[0], closure[1]);
    if (residual.norm() > 1e-9) {
      throw std::logic_error("connect_sum: component does not close");
    }
    out.components.push_back(DiscreteCurve::build_with_lift_hint(
        std::move(verts), closure, geom, lift_hint));
  }
  return out;
}

int neck_moduli_dimension(std::span<const IntersectionPoint> points) {
  if (points.empty()) {
    throw std::invalid_argument("neck_moduli_dimension: empty point list");
  }
  return static_cast<int>(points.size()) - 1;
}

}  // namespace slag
