#pragma once

#include <complex>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "slag/geometry.hpp"

namespace slag {

// Integer pairing lattice acted on by Dehn twists in spherical classes.
// The pairing is symmetric for even ambient dimension n and antisymmetric
// for odd n; spherical generators pair with themselves to -2 (n = 2) or
// 0 (n = 3).
class PairingLattice {
 public:
  PairingLattice(int dimension_parity, std::vector<std::vector<long long>> pairing);

  // Rank-2 lattices of the two standard examples: n = 2 uses
  // [[-2, 1], [1, -2]], n = 3 uses [[0, 1], [-1, 0]].
  static PairingLattice standard_pair(int dimension_parity);

  int rank() const { return rank_; }
  int dimension_parity() const { return n_; }
  long long pairing(int i, int j) const {
    return m_[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  long long pair(std::span<const long long> x,
                 std::span<const long long> y) const;
  bool spherical(int generator) const;
  std::vector<long long> basis_vector(int i) const;

 private:
  int rank_;
  int n_;
  std::vector<std::vector<long long>> m_;
};

// Picard-Lefschetz action of the twist in generator a:
//   n even: x -> x + <x,a> a   (reflection; an involution, so the squared
//           twist is the identity on homology — note that a transvection
//           rule of the form x -> x + 2<x,a> a for the squared twist is
//           NOT consistent with self-pairing -2 and is not used here)
//   n odd:  x -> x - <a,x> a   (transvection fixing a; with <a,b> = +1
//           this sends a+b to b)
// power applies the twist repeatedly; negative powers invert.  The
// opposite-sign convention for odd n is available behind a flag.
std::vector<long long> dehn_twist_homology(const PairingLattice& lattice,
                                           int a, std::span<const long long> x,
                                           int power = 1,
                                           bool opposite_convention = false);

// Formal term over graded generators: leaves carry a generator index and
// an integer shift [m]; internal nodes are ordered graded connect sums or
// twist applications.  Immutable shared tree.
class GradedExpression {
 public:
  enum class Kind { generator, sum, twist };
  using Ptr = std::shared_ptr<const GradedExpression>;

  static Ptr generator(int index, int shift = 0);
  static Ptr sum(Ptr left, Ptr right);
  static Ptr twist(int gen, int power, Ptr child);

  Kind kind() const { return kind_; }
  int gen() const { return gen_; }
  int shift() const { return shift_; }
  int power() const { return power_; }
  const Ptr& left() const { return left_; }
  const Ptr& right() const { return right_; }
  const Ptr& child() const { return child_; }

  bool equals(const GradedExpression& other) const;
  std::string to_string(std::span<const std::string> names) const;

  // Homology class of the term in the lattice (twist nodes act through
  // dehn_twist_homology; odd shifts reverse sign).
  std::vector<long long> homology_class(const PairingLattice& lattice) const;

 private:
  GradedExpression() = default;

  Kind kind_ = Kind::generator;
  int gen_ = 0;
  int shift_ = 0;
  int power_ = 0;
  Ptr left_, right_, child_;
};

// Parses the prefix grammar:  L1 | (shift <expr> m) | (sum <e1> <e2>) |
// (T <gen> <power> <expr>).  Generator names are supplied by `names`.
GradedExpression::Ptr parse_expression(const std::string& text,
                                       std::span<const std::string> names);

struct RewriteContext {
  const PairingLattice* lattice = nullptr;
  std::vector<double> generator_phase;  // numeric phase per generator
};

enum class RewriteMode {
  full,             // cancel + distribute + self + other-generator rules
  distribute_only,  // distribute + self rules; twists of other generators
                    // stay as residual nodes
};

// Applies T_{a}^{power} to the expression and normalizes with the rules
//   T_a(a[m] # y)  -> y                      (m even)
//   T_a(x # y)     -> T_a(x) # T_a(y)
//   T_a(a[m])      -> a[m + 1 - n]
//   T_a(b[m])      -> b[m] # a[s]
// where s is the unique shift of the homology-consistent parity whose
// phase difference with b[m] lies in (-pi, pi); inverse twists use the
// mirrored rules.  Throws GradingError ("not reducible") when no such
// shift exists or a rule is missing.
GradedExpression::Ptr graded_twist_rewrite(const GradedExpression::Ptr& expr,
                                           int twist_gen, int power,
                                           const RewriteContext& ctx,
                                           RewriteMode mode = RewriteMode::full);

struct PhaseAuditEntry {
  std::string node;
  double left_phase = 0.0;
  double right_phase = 0.0;
  bool pass = false;  // left < right
};

struct PhaseAuditReport {
  std::vector<PhaseAuditEntry> entries;  // one per sum node
  bool pass = true;                      // vacuously true for leaves
};

// For every sum node, checks the stability inequality in the form
// left phase < right phase.  Leaf phase is phi(generator) + shift*pi;
// a twist node keeps its child's phase (monodromy returns near the
// baseline); a sum node reports the midpoint of its operands.
PhaseAuditReport phase_audit(const GradedExpression::Ptr& expr,
                             std::span<const double> generator_phase,
                             std::span<const std::string> names);

// One-parameter family model: a path u(t) avoiding 0, along which the
// period of the tracked class has a simple zero at u = 0 (the K3 model is
// the base-changed double cover, so its period is single-valued of order
// one as well; only the monodromy label differs).
enum class FamilyKind { threefold, k3_base_changed };

struct FamilyModel {
  FamilyKind kind = FamilyKind::threefold;
  std::vector<std::complex<double>> path;  // samples of u(t), t uniform [0,1]
  double baseline_phase = 0.0;             // phi_2, constant
};

struct WallCrossing {
  double parameter = 0.0;
  int direction = 0;  // sign of d(phi1)/dt at the crossing
};

struct FamilyTrack {
  int winding = 0;  // total change of the lifted arg(u) / 2pi (closed path)
  std::vector<WallCrossing> walls;
  std::vector<double> phase;  // lifted phi1 per sample
};

// Tracks the lifted phase phi1(t) = lift of arg(u) along the path and
// detects walls where phi1 crosses the baseline mod 2pi; crossings at
// baseline + pi mod 2pi are rejected (opposite orientation).  Throws on
// paths through 0 or with arg steps >= pi/4.
FamilyTrack family_track(const FamilyModel& model);

}  // namespace slag
