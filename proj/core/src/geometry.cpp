#include "slag/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace slag {

double wrap_principal(double angle) {
  double y = std::remainder(angle, kTwoPi);  // [-pi, pi]
  if (y <= -kPi) y += kTwoPi;
  return y;
}

TorusCY::TorusCY(Vec2 b1, Vec2 b2, double alpha)
    : b1_(b1), b2_(b2), alpha_(alpha) {
  if (!(cross(b1, b2) > 0.0)) {
    throw std::invalid_argument(
        "TorusCY: basis must be linearly independent with positive "
        "determinant");
  }
}

Vec2 TorusCY::to_lattice(Vec2 v) const {
  const double det = lattice_det();
  return {(v.x * b2_.y - v.y * b2_.x) / det,
          (v.y * b1_.x - v.x * b1_.y) / det};
}

Vec2 TorusCY::reduce(Vec2 v) const {
  Vec2 c = to_lattice(v);
  c.x -= std::floor(c.x);
  c.y -= std::floor(c.y);
  return from_lattice(c);
}

double TorusCY::injectivity_radius() const {
  // Shortest vector over a small search window; adequate for mildly
  // skewed bases.
  double best = b1_.norm();
  for (int p = -3; p <= 3; ++p) {
    for (int q = -3; q <= 3; ++q) {
      if (p == 0 && q == 0) continue;
      best = std::min(best, lattice_vector(p, q).norm());
    }
  }
  return 0.5 * best;
}

std::complex<double> omega_integral(int p, int q, const TorusCY& geometry) {
  if (p == 0 && q == 0) {
    throw std::invalid_argument("omega_integral: zero homology class");
  }
  const Vec2 v = geometry.lattice_vector(p, q);
  return geometry.rotation() * std::complex<double>(v.x, v.y);
}

GradedClass::GradedClass(int p, int q, double phase_lift,
                         const TorusCY& geometry)
    : p_(p), q_(q), phase_lift_(phase_lift), alpha_(geometry.alpha()) {
  if (p == 0 && q == 0) {
    throw std::invalid_argument("GradedClass: zero homology class");
  }
  const double canonical = std::arg(omega_integral(p, q, geometry));
  if (std::abs(wrap_principal(phase_lift - canonical)) > 1e-9) {
    throw std::invalid_argument(
        "GradedClass: phase_lift is not a lift of arg((p+iq)e^{-i alpha})");
  }
}

GradedClass GradedClass::from_lift_index(int p, int q, int lift_index,
                                         const TorusCY& geometry) {
  const double canonical = std::arg(omega_integral(p, q, geometry));
  return GradedClass(p, q, canonical + static_cast<double>(lift_index) * kTwoPi,
                     geometry);
}

PhaseSlope phase_and_slope(const GradedClass& c) {
  PhaseSlope out;
  out.phi = c.phase_lift();
  if (c.alpha() == 0.0) {
    // Canonical lift of an integer class: tan(phi) = q/p exactly.
    if (c.p() == 0) {
      out.mu_infinite = true;
      out.mu = std::numeric_limits<double>::infinity();
    } else {
      out.mu = static_cast<double>(c.q()) / static_cast<double>(c.p());
    }
    return out;
  }
  const double reduced = std::remainder(out.phi, kPi);
  if (std::abs(std::abs(reduced) - 0.5 * kPi) < 1e-12) {
    out.mu_infinite = true;
    out.mu = std::numeric_limits<double>::infinity();
  } else {
    out.mu = std::tan(reduced);
  }
  return out;
}

GradedClass shift_grading(const GradedClass& c, int m) {
  const int sign = (m % 2 == 0) ? 1 : -1;
  return GradedClass(sign * c.p_, sign * c.q_,
                     c.phase_lift_ + static_cast<double>(m) * kPi, c.alpha_);
}

}  // namespace slag
