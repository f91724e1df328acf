#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace slag {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double xx, double yy) : x(xx), y(yy) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  double norm() const { return std::hypot(x, y); }
  constexpr double norm2() const { return x * x + y * y; }
  bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
constexpr Vec2 operator*(Vec2 v, double s) { return s * v; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Wrap an angle into the principal range (-pi, pi].
double wrap_principal(double angle);

// Flat Calabi-Yau structure on T^2 = R^2 / (Z b1 + Z b2).  The holomorphic
// 1-form is e^{-i alpha}(dx + i dy); the area form is the standard one
// induced by the basis.  alpha is stored as an unconstrained real lift,
// not an angle mod 2pi.  Immutable; safe to copy and share across threads.
class TorusCY {
 public:
  // Requires linearly independent basis vectors with positive determinant.
  TorusCY(Vec2 b1, Vec2 b2, double alpha);

  static TorusCY unit_square(double alpha = 0.0) {
    return TorusCY({1.0, 0.0}, {0.0, 1.0}, alpha);
  }

  Vec2 basis1() const { return b1_; }
  Vec2 basis2() const { return b2_; }
  double alpha() const { return alpha_; }
  double lattice_det() const { return cross(b1_, b2_); }

  // p*b1 + q*b2.
  Vec2 lattice_vector(int p, int q) const {
    return static_cast<double>(p) * b1_ + static_cast<double>(q) * b2_;
  }

  // Coordinates of v in the lattice basis, and back.
  Vec2 to_lattice(Vec2 v) const;
  Vec2 from_lattice(Vec2 c) const { return c.x * b1_ + c.y * b2_; }

  // Representative of the torus point in the fundamental domain
  // [0,1)^2 in lattice coordinates.
  Vec2 reduce(Vec2 v) const;

  // Half the length of the shortest nonzero lattice vector.
  double injectivity_radius() const;

  // e^{-i alpha}.
  std::complex<double> rotation() const {
    return {std::cos(alpha_), -std::sin(alpha_)};
  }

  bool operator==(const TorusCY&) const = default;

 private:
  Vec2 b1_, b2_;
  double alpha_;
};

// Period of the holomorphic form over the class p*b1 + q*b2:
// e^{-i alpha} (p z1 + q z2) with z_j the basis vectors as complex numbers.
// Two-term exact formula, no quadrature.  Throws on the zero class.
std::complex<double> omega_integral(int p, int q, const TorusCY& geometry);

// An integer homology class (p, q) together with a chosen real lift of the
// phase arg(omega_integral)/ — the grading.  The lift fixes the 2pi*k
// ambiguity; it is data, not a derived quantity.
class GradedClass {
 public:
  // Validates e^{i lift} = (p + iq) e^{-i alpha} / |p + iq| within 1e-9.
  GradedClass(int p, int q, double phase_lift, const TorusCY& geometry);

  // Canonical lift arg(p+iq) - alpha in (-pi, pi], plus 2*pi*lift_index.
  static GradedClass from_lift_index(int p, int q, int lift_index,
                                     const TorusCY& geometry);

  int p() const { return p_; }
  int q() const { return q_; }
  double phase_lift() const { return phase_lift_; }
  double alpha() const { return alpha_; }

 private:
  GradedClass(int p, int q, double phase_lift, double alpha)
      : p_(p), q_(q), phase_lift_(phase_lift), alpha_(alpha) {}

  int p_;
  int q_;
  double phase_lift_;
  double alpha_;  // rotation of the geometry the lift was validated against

  friend GradedClass shift_grading(const GradedClass&, int);
};

struct PhaseSlope {
  double phi = 0.0;
  double mu = 0.0;
  bool mu_infinite = false;  // cos(phi) = 0; mu carries no information
};

// phi is the stored lift; mu = tan(phi), reported as an infinite marker
// when cos(phi) = 0.  mu is invariant under phi -> phi +- pi.  When the
// lift is a canonical one with alpha = 0, mu is computed as the exact
// rational q/p.
PhaseSlope phase_and_slope(const GradedClass& c);

// Grading shift [m]: phase lift increases by m*pi and (p, q) flips sign
// for odd m (orientation reversal).
GradedClass shift_grading(const GradedClass& c, int m);

}  // namespace slag
