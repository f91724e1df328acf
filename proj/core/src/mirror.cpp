#include "slag/mirror.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace slag {

MirrorImage mirror_map(const GradedClass& c) {
  const bool normalized = c.p() > 0 || (c.p() == 0 && c.q() > 0);
  if (!normalized) {
    throw std::invalid_argument(
        "mirror_map: unnormalized orientation (shift the grading first)");
  }
  MirrorImage out;
  out.sheaf = SheafClass{c.p(), c.q()};
  const double canonical = wrap_principal(
      std::atan2(static_cast<double>(c.q()), static_cast<double>(c.p())) -
      c.alpha());
  out.derived_shift =
      static_cast<int>(std::lround((c.phase_lift() - canonical) / kPi));
  return out;
}

bool sheaf_stable(const SheafClass& s) {
  if (s.rank < 0 || (s.rank == 0 && s.degree == 0)) {
    throw std::invalid_argument("sheaf_stable: invalid class");
  }
  if (s.rank == 0) return s.degree == 1;
  return std::gcd(s.rank, std::abs(s.degree)) == 1;
}

WallVerdict extension_wall(const WallScenario& scenario) {
  WallVerdict v;
  v.mu_e2 = scenario.mu;
  v.mu_e1 = scenario.mu - scenario.t;
  if (scenario.t > 0.0) {
    v.status = WallStatus::stable;
  } else if (scenario.t == 0.0) {
    v.status = WallStatus::semistable;
    v.representative = "E1+E2";  // the polystable direct sum
  } else {
    v.status = WallStatus::unstable;
    v.destabilizer = "E1";
  }
  return v;
}

std::vector<long long> mukai_sum(int n, std::span<const long long> v1,
                                 std::span<const long long> v2) {
  if (n != 2 && n != 3) throw std::invalid_argument("mukai_sum: n must be 2 or 3");
  if (v1.size() != v2.size()) {
    throw std::invalid_argument("mukai_sum: length mismatch");
  }
  auto zero = [](std::span<const long long> v) {
    return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
  };
  if (zero(v1) || zero(v2)) {
    throw std::invalid_argument("mukai_sum: zero vector input");
  }
  std::vector<long long> out(v1.size());
  for (size_t i = 0; i < v1.size(); ++i) {
    out[i] = (n == 2) ? v1[i] + v2[i] : v2[i] - v1[i];
  }
  return out;
}

}  // namespace slag
