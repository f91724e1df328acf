#pragma once

#include <vector>

#include "slag/geometry.hpp"

namespace slag {

struct DecompositionWitness {
  int p1 = 0, q1 = 0;
  double phi1 = 0.0;
  int p2 = 0, q2 = 0;
  double phi2 = 0.0;
  int intersection_count = 0;  // |p1 q2 - p2 q1| for line representatives
  bool compatible = false;     // graded sum exists: 0 < phi2 - phi1 < pi
  bool destabilizing = false;  // compatible and phi1 >= phi2
};

enum class StabilityStatus { stable, destabilized, parallel_only };

struct StabilityVerdict {
  StabilityStatus status = StabilityStatus::stable;
  std::vector<DecompositionWitness> witnesses;
  int search_bound = 0;
};

// All transverse splittings (p1,q1) + (p2,q2) = (p,q) with both parts
// nonzero, max(|p_i|,|q_i|) <= bound and p1 q2 - p2 q1 != 0, in
// lexicographic (p1, q1) order.  phi1 is the principal lift of
// arg(p1 + i q1); phi2 the lift of arg(p2 + i q2) with phi2 - phi1 in
// (-pi, pi] — the only relative lift that can admit a graded sum.
// Requires bound >= max(|p|, |q|).
std::vector<DecompositionWitness> enumerate_decompositions(
    const GradedClass& c, int bound);

// The stability verdict for the class: destabilized if some witness is
// compatible with phi1 >= phi2 (never happens on T^2 — every compatible
// witness has phi2 > phi1 by the strict window); parallel_only for
// imprimitive classes, which split into positively-proportional
// equal-phase parts that never intersect transversally (the thickened
// multiply-wrapped case); stable otherwise.  Invariant under even
// grading shifts.
StabilityVerdict is_stable(const GradedClass& c, int bound);

}  // namespace slag
