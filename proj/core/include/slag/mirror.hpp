#pragma once

#include <span>
#include <string>
#include <vector>

#include "slag/geometry.hpp"

namespace slag {

// A (rank, degree) class on the elliptic curve; rank >= 0, not both zero.
struct SheafClass {
  int rank = 0;
  int degree = 0;
};

struct MirrorImage {
  SheafClass sheaf;
  // Lift offset of the class in pi-steps (derived-category degree).
  int derived_shift = 0;
};

// (p, q) -> (rank p, degree q).  Requires the class normalized with
// rank >= 0 (p > 0, or p = 0 and q > 0), i.e. a grading lift of the form
// arg(p+iq) + 2 pi k; callers shift odd gradings first and carry the odd
// marker themselves.
MirrorImage mirror_map(const GradedClass& c);

// Atiyah classification: positive rank is stable iff gcd(rank, degree)=1;
// torsion (rank 0) iff degree = 1.  Length-d torsion for d > 1 is
// S-equivalent to a sum of points, hence not stable.
bool sheaf_stable(const SheafClass& s);

// Family of slopes mu^t(E2) = mu fixed, mu^t(E1) = mu - t crossing a wall
// at t = 0 for the extension 0 -> E1 -> E -> E2 -> 0.
struct WallScenario {
  double mu = 0.0;
  double t = 0.0;
};

enum class WallStatus { stable, semistable, unstable };

struct WallVerdict {
  WallStatus status = WallStatus::stable;
  std::string representative;  // S-equivalence representative at the wall
  std::string destabilizer;    // witness subobject when unstable
  double mu_e1 = 0.0;
  double mu_e2 = 0.0;
};

WallVerdict extension_wall(const WallScenario& scenario);

// Mukai-vector sum rule for the extension on the other side of the wall:
// n even gives v1 + v2, n = 3 gives v2 - v1 (one-place shift in the
// derived category).  Vectors must be nonzero and of equal length.
std::vector<long long> mukai_sum(int n, std::span<const long long> v1,
                                 std::span<const long long> v2);

}  // namespace slag
