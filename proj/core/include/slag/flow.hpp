#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slag/curve.hpp"

namespace slag {

struct FlowConfig {
  double step_safety = 0.5;          // dt = step_safety * (min edge)^2
  int resample_every = 20;           // arclength resampling period, steps
  double max_time = 10.0;
  double convergence_phase_spread = 1e-3;  // radians
  double moment_tolerance = 1e-5;
  double min_edge_fraction = 0.25;   // degeneracy guard vs mean edge

  void validate() const;
};

enum class FlowStatus { converged_to_line, singular, timeout };

struct FlowResult {
  explicit FlowResult(DiscreteCurve initial) : final_curve(std::move(initial)) {}

  FlowStatus status = FlowStatus::timeout;
  DiscreteCurve final_curve;
  std::optional<std::array<int, 2>> line_class;  // equals closure on success
  FlowDiagnostics diagnostics;
  std::vector<std::string> warnings;
  double elapsed_time = 0.0;
  int steps = 0;
};

// Discrete curvature vector at each vertex: the second difference of
// position with arclength weights,
//   2/(l_{k-1}+l_k) * ((v_{k+1}-v_k)/l_k - (v_k-v_{k-1})/l_{k-1}),
// periodic through the closure translation.
std::vector<Vec2> curvature_vectors(const DiscreteCurve& curve);

// Explicit Euler step v += dt * curvature.  Requires
// dt <= step_safety * (min edge)^2 for stability.
DiscreteCurve mcf_step_explicit(const DiscreteCurve& curve, double dt);

// Semi-implicit step: solves the cyclic tridiagonal system
// (I - dt L) v' = v with L the arclength Laplacian frozen at the current
// curve; unconditionally linearly stable.  The closure vector is exactly
// preserved by both variants.  Throws RefinementRequired ("resample
// required") if an edge has degenerated below min_edge_fraction of the
// mean.
DiscreteCurve mcf_step(const DiscreteCurve& curve, double dt,
                       double min_edge_fraction = 0.0);

// Curve-shortening flow driver.  Convergence is certified by the phase
// spread (constant theta is the straight-line condition), plus a small
// moment norm.  Diagnostics are recorded at every accepted step; the
// cumulative flux accounts for every curve replacement, resampling
// included.
FlowResult run_flow(const DiscreteCurve& curve, const FlowConfig& config);

}  // namespace slag
