#include "slag/shapes.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace slag {

DiscreteCurve straight_line(const TorusCY& geometry, int p, int q, int n,
                            Vec2 base) {
  if (n < 3) throw std::invalid_argument("straight_line: need n >= 3");
  const Vec2 period = geometry.lattice_vector(p, q);
  std::vector<Vec2> vertices(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    vertices[static_cast<size_t>(k)] =
        base + (static_cast<double>(k) / n) * period;
  }
  return DiscreteCurve::build(std::move(vertices), {p, q}, geometry);
}

DiscreteCurve perturbed_line(const TorusCY& geometry, int p, int q, int n,
                             double amplitude, uint64_t seed, Vec2 base,
                             int max_mode) {
  if (n < 8) throw std::invalid_argument("perturbed_line: need n >= 8");
  const Vec2 period = geometry.lattice_vector(p, q);
  const double plen = period.norm();
  const Vec2 normal = {-period.y / plen, period.x / plen};

  SplitMix64 rng(seed);
  std::vector<double> amp(static_cast<size_t>(max_mode));
  std::vector<double> phase(static_cast<size_t>(max_mode));
  for (int m = 0; m < max_mode; ++m) {
    amp[static_cast<size_t>(m)] = rng.symmetric() / (m + 1);
    phase[static_cast<size_t>(m)] = kTwoPi * rng.uniform();
  }
  std::vector<double> profile(static_cast<size_t>(n));
  double peak = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / n;
    double f = 0.0;
    for (int m = 0; m < max_mode; ++m) {
      f += amp[static_cast<size_t>(m)] *
           std::sin(kTwoPi * (m + 1) * t + phase[static_cast<size_t>(m)]);
    }
    profile[static_cast<size_t>(k)] = f;
    peak = std::max(peak, std::abs(f));
  }
  const double scale = (peak > 0.0) ? amplitude / peak : 0.0;

  std::vector<Vec2> vertices(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / n;
    vertices[static_cast<size_t>(k)] =
        base + t * period + (scale * profile[static_cast<size_t>(k)]) * normal;
  }
  return DiscreteCurve::build(std::move(vertices), {p, q}, geometry);
}

DiscreteCurve circle(const TorusCY& geometry, Vec2 centre, double radius,
                     int n) {
  if (n < 8) throw std::invalid_argument("circle: need n >= 8");
  if (radius <= 0.0) throw std::invalid_argument("circle: radius must be > 0");
  std::vector<Vec2> vertices(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = kTwoPi * k / n;
    vertices[static_cast<size_t>(k)] =
        centre + Vec2{radius * std::cos(t), radius * std::sin(t)};
  }
  return DiscreteCurve::build(std::move(vertices), {0, 0}, geometry);
}

}  // namespace slag
