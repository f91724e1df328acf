#include "slag/stability.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace slag {

std::vector<DecompositionWitness> enumerate_decompositions(
    const GradedClass& c, int bound) {
  const int p = c.p();
  const int q = c.q();
  if (bound < std::max(std::abs(p), std::abs(q))) {
    throw std::invalid_argument(
        "enumerate_decompositions: bound < max(|p|, |q|)");
  }
  std::vector<DecompositionWitness> out;
  for (int p1 = -bound; p1 <= bound; ++p1) {
    for (int q1 = -bound; q1 <= bound; ++q1) {
      if (p1 == 0 && q1 == 0) continue;
      const int p2 = p - p1;
      const int q2 = q - q1;
      if (p2 == 0 && q2 == 0) continue;
      if (std::max(std::abs(p2), std::abs(q2)) > bound) continue;
      const int det = p1 * q2 - p2 * q1;
      if (det == 0) continue;
      DecompositionWitness w;
      w.p1 = p1; w.q1 = q1;
      w.p2 = p2; w.q2 = q2;
      w.intersection_count = std::abs(det);
      w.phi1 = std::atan2(static_cast<double>(q1), static_cast<double>(p1));
      const double raw2 =
          std::atan2(static_cast<double>(q2), static_cast<double>(p2));
      w.phi2 = w.phi1 + wrap_principal(raw2 - w.phi1);
      w.compatible = w.phi2 - w.phi1 > 0.0 && w.phi2 - w.phi1 < kPi;
      w.destabilizing = w.compatible && w.phi1 >= w.phi2;
      out.push_back(w);
    }
  }
  return out;
}

StabilityVerdict is_stable(const GradedClass& c, int bound) {
  StabilityVerdict v;
  v.search_bound = bound;
  v.witnesses = enumerate_decompositions(c, bound);
  for (const DecompositionWitness& w : v.witnesses) {
    if (w.destabilizing) {
      v.status = StabilityStatus::destabilized;
      return v;
    }
  }
  if (std::gcd(std::abs(c.p()), std::abs(c.q())) > 1) {
    v.status = StabilityStatus::parallel_only;
  } else {
    v.status = StabilityStatus::stable;
  }
  return v;
}

}  // namespace slag
