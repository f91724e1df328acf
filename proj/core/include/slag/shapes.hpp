#pragma once

#include <cstdint>

#include "slag/curve.hpp"

namespace slag {

// Deterministic 64-bit generator (splitmix64); identical streams on every
// platform, unlike the distributions in <random>.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }
};

// Straight line in class (p, q) through base, sampled at n vertices.
DiscreteCurve straight_line(const TorusCY& geometry, int p, int q, int n,
                            Vec2 base = {0.0, 0.0});

// Straight line displaced normally by a random low-mode Fourier profile
// with max amplitude `amplitude` (Maslov zero by construction).
DiscreteCurve perturbed_line(const TorusCY& geometry, int p, int q, int n,
                             double amplitude, uint64_t seed,
                             Vec2 base = {0.0, 0.0}, int max_mode = 3);

// Embedded contractible circle, counterclockwise, closure (0, 0).
DiscreteCurve circle(const TorusCY& geometry, Vec2 centre, double radius,
                     int n);

}  // namespace slag
