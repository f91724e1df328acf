#pragma once

#include <array>
#include <span>
#include <vector>

#include "slag/curve.hpp"

namespace slag {

struct IntersectionPoint {
  Vec2 location;        // torus representative (fundamental domain)
  int edge_c1 = 0;      // edge index into each curve
  int edge_c2 = 0;
  int crossing_sign = 0;  // sign of det(t1, t2)
  double theta1 = 0.0;    // local phase lifts at the point
  double theta2 = 0.0;
  // Construction data for the surgery:
  double s_on_c1 = 0.0;   // arclength positions along each curve
  double s_on_c2 = 0.0;
  std::array<int, 2> translate{0, 0};  // lattice shift of c2's lift
};

// All transverse crossings of the two torus curves, sorted along c1.
// For straight lines of classes (p1,q1), (p2,q2) the count is
// |p1 q2 - p2 q1|.  Throws ParallelIntersection on overlapping parallel
// segments.  Curves must share the same geometry.
std::vector<IntersectionPoint> intersections(const DiscreteCurve& c1,
                                             const DiscreteCurve& c2);

// Phase window for the graded sum at a transverse point of constant-phase
// curves: 0 < phi2 - phi1 < pi, strictly.
bool grading_compatible(double phi1, double phi2);

// One positive scale per intersection point; only the projective class
// matters for the hamiltonian deformation class of the sum.
struct NeckParameters {
  std::vector<double> scales;
};

// Result of a connect sum.  Sums at one point are connected; sums at
// several points can resolve into more than one closed component.
struct CurveSystem {
  std::vector<DiscreteCurve> components;

  std::array<int, 2> total_closure() const;
  double total_length() const;
  // Lift of the argument of the summed period, within the components'
  // theta window.
  double average_phase() const;
  bool connected() const { return components.size() == 1; }
  const DiscreteCurve& single() const;
};

// Graded Lagrangian connect sum of two Maslov-zero curves: every crossing
// is replaced by the oriented local smoothing at the given neck scale
// (a C^1 spline pair standing in for the hyperbola branches xy = +-s of
// the standard model).  Requires the grading window to hold at every
// intersection point with the curves' given lifts; the homology class of
// the result is [c1] + [c2] exactly.  Throws GradingError with the witness
// point when no consistent grading exists, std::invalid_argument when
// necks are too large.
CurveSystem connect_sum(const DiscreteCurve& c1, const DiscreteCurve& c2,
                        const NeckParameters& necks);

// dim P(⊕_i R) = #points - 1; throws on an empty list.
int neck_moduli_dimension(std::span<const IntersectionPoint> points);

}  // namespace slag
