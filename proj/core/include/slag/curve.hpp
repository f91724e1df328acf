#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "slag/geometry.hpp"

namespace slag {

// One continuous lift per edge of the tangent phase theta, where the
// holomorphic form restricts to e^{i theta} times arclength.  The first
// value is placed in (-pi, pi]; the result is unique up to a global 2pi*k.
// Throws RefinementRequired if any consecutive tangent turn (including the
// wrap through the closing edge) is >= pi/2.
std::vector<double> theta_lift_compute(std::span<const Vec2> vertices,
                                       std::array<int, 2> closure,
                                       const TorusCY& geometry);

// A closed polygonal curve on the flat torus, carried in the universal
// cover.  Vertices v_0..v_{N-1}; the closing edge runs from v_{N-1} to
// v_0 + p*b1 + q*b2, so homology is exact integer data.  theta_lift holds
// the per-edge phase lift (the grading); holonomy is an optional flat
// U(1) angle carried but never flowed.  Immutable after construction.
class DiscreteCurve {
 public:
  // Computes the canonical theta lift (first value in (-pi, pi]).
  static DiscreteCurve build(std::vector<Vec2> vertices,
                             std::array<int, 2> closure,
                             const TorusCY& geometry,
                             std::optional<double> holonomy = std::nullopt);

  // Same, but the global 2pi*k of the lift is chosen so that the first
  // edge's theta lands within pi of lift_hint (grading carried as data).
  static DiscreteCurve build_with_lift_hint(
      std::vector<Vec2> vertices, std::array<int, 2> closure,
      const TorusCY& geometry, double lift_hint,
      std::optional<double> holonomy = std::nullopt);

  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  Vec2 vertex(int k) const { return vertices_[static_cast<size_t>(k)]; }
  std::array<int, 2> closure() const { return closure_; }
  const TorusCY& geometry() const { return geometry_; }
  std::optional<double> holonomy() const { return holonomy_; }
  const std::vector<double>& theta_lift() const { return theta_lift_; }
  double theta(int k) const { return theta_lift_[static_cast<size_t>(k)]; }

  // Translation closing the curve: p*b1 + q*b2.
  Vec2 closing_translation() const {
    return geometry_.lattice_vector(closure_[0], closure_[1]);
  }

  // Edge k runs from vertex k to vertex k+1 (closing edge wraps to
  // v_0 + closing translation).  k in [0, size()).
  Vec2 edge_vector(int k) const;
  double edge_length(int k) const { return edge_vector(k).norm(); }
  double length() const;
  double min_edge_length() const;
  double mean_edge_length() const { return length() / size(); }

  // Winding of e^{i theta}: (lift closed up - lift at first edge) / 2pi,
  // an exact integer.  Zero for all straight lines.
  int maslov() const { return maslov_; }

  // Lift of arg(omega_integral(closure)) placed within the window
  // centred on the theta range.  Depends only on (closure, alpha,
  // grading window), never on interior vertices.  Requires maslov = 0.
  double average_phase() const;

  // max theta - min theta over the edges.
  double phase_spread() const;

  // Sum over edges of sin^2(theta - average_phase) * edge length; zero
  // iff the curve is a straight line of the class slope.  Requires
  // maslov = 0.
  double moment_norm() const;

  // Grading shift [m]: theta lift shifted by m*pi; odd m reverses the
  // traversal (orientation) and negates the closure.
  DiscreteCurve with_grading_shift(int m) const;

  // Same geometric curve, n vertices at uniform arclength (v_0 kept).
  DiscreteCurve resampled_uniform(int n) const;

  DiscreteCurve translated(Vec2 t) const;

  // True if no two edges of the torus curve cross (O(N^2) sweep over
  // lattice translates).
  bool is_embedded() const;

 private:
  DiscreteCurve() : geometry_(TorusCY::unit_square()) {}

  std::vector<Vec2> vertices_;
  std::array<int, 2> closure_{0, 0};
  std::vector<double> theta_lift_;
  std::optional<double> holonomy_;
  TorusCY geometry_;
  int maslov_ = 0;
};

// Weighted bilinear pairing sum over edges of
// cos(theta - average_phase) * a * b * edge length.  Symmetric as summed;
// positive definite when sup |theta - average_phase| < pi/2, indefinite
// results are legal output.  a, b sampled per edge; requires maslov = 0.
double weighted_metric(const DiscreteCurve& curve, std::span<const double> a,
                       std::span<const double> b);

// Signed symplectic area swept between two corresponding curves
// (trapezoid rule over the traced cylinder in the universal cover).
// Curves must share N, closure and geometry, and each vertex must move
// less than half the injectivity radius.
double flux_step(const DiscreteCurve& from, const DiscreteCurve& to);

// Total swept area along a history with vertexwise correspondence;
// additive under concatenation.
double flux(std::span<const DiscreteCurve> history);

struct DiagnosticsSample {
  double time = 0.0;
  double length = 0.0;
  double phase_mean = 0.0;
  double phase_spread = 0.0;
  double moment_norm = 0.0;
  double cumulative_flux = 0.0;
  // max |theta - phase_mean| over the curve; in-memory only, not part of
  // the CSV schema.
  double phase_max_dev = 0.0;
};

// Time series produced by the flow integrator; times strictly increasing.
struct FlowDiagnostics {
  std::vector<DiagnosticsSample> samples;

  void append(const DiagnosticsSample& s);
};

}  // namespace slag
