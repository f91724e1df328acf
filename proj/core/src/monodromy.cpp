#include "slag/monodromy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "slag/errors.hpp"

namespace slag {

PairingLattice::PairingLattice(int dimension_parity,
                               std::vector<std::vector<long long>> pairing)
    : rank_(static_cast<int>(pairing.size())),
      n_(dimension_parity),
      m_(std::move(pairing)) {
  if (n_ != 2 && n_ != 3) {
    throw std::invalid_argument("PairingLattice: dimension parity must be 2 or 3");
  }
  for (const auto& row : m_) {
    if (static_cast<int>(row.size()) != rank_) {
      throw std::invalid_argument("PairingLattice: pairing must be square");
    }
  }
  for (int i = 0; i < rank_; ++i) {
    for (int j = 0; j < rank_; ++j) {
      const long long a = m_[static_cast<size_t>(i)][static_cast<size_t>(j)];
      const long long b = m_[static_cast<size_t>(j)][static_cast<size_t>(i)];
      if (n_ == 2 ? a != b : a != -b) {
        throw std::invalid_argument(
            "PairingLattice: symmetry does not match dimension parity");
      }
    }
  }
}

PairingLattice PairingLattice::standard_pair(int dimension_parity) {
  if (dimension_parity == 2) {
    return PairingLattice(2, {{-2, 1}, {1, -2}});
  }
  return PairingLattice(3, {{0, 1}, {-1, 0}});
}

long long PairingLattice::pair(std::span<const long long> x,
                               std::span<const long long> y) const {
  if (static_cast<int>(x.size()) != rank_ ||
      static_cast<int>(y.size()) != rank_) {
    throw std::invalid_argument("PairingLattice: vector length mismatch");
  }
  long long s = 0;
  for (int i = 0; i < rank_; ++i) {
    for (int j = 0; j < rank_; ++j) {
      s += x[static_cast<size_t>(i)] *
           m_[static_cast<size_t>(i)][static_cast<size_t>(j)] *
           y[static_cast<size_t>(j)];
    }
  }
  return s;
}

bool PairingLattice::spherical(int generator) const {
  const long long self = pairing(generator, generator);
  return n_ == 2 ? self == -2 : self == 0;
}

std::vector<long long> PairingLattice::basis_vector(int i) const {
  std::vector<long long> e(static_cast<size_t>(rank_), 0);
  e[static_cast<size_t>(i)] = 1;
  return e;
}

std::vector<long long> dehn_twist_homology(const PairingLattice& lattice,
                                           int a, std::span<const long long> x,
                                           int power, bool opposite_convention) {
  if (a < 0 || a >= lattice.rank()) {
    throw std::invalid_argument("dehn_twist_homology: bad generator index");
  }
  if (!lattice.spherical(a)) {
    throw std::invalid_argument("dehn_twist_homology: non-spherical generator");
  }
  const std::vector<long long> ea = lattice.basis_vector(a);
  std::vector<long long> v(x.begin(), x.end());
  const int reps = std::abs(power);
  for (int r = 0; r < reps; ++r) {
    long long coeff;
    if (lattice.dimension_parity() == 2) {
      coeff = lattice.pair(v, ea);  // reflection; self-inverse
    } else {
      coeff = -lattice.pair(ea, v);
      if (opposite_convention) coeff = -coeff;
      if (power < 0) coeff = -coeff;  // transvection inverse
    }
    for (int i = 0; i < lattice.rank(); ++i) {
      v[static_cast<size_t>(i)] += coeff * ea[static_cast<size_t>(i)];
    }
  }
  return v;
}

GradedExpression::Ptr GradedExpression::generator(int index, int shift) {
  auto e = std::shared_ptr<GradedExpression>(new GradedExpression());
  e->kind_ = Kind::generator;
  e->gen_ = index;
  e->shift_ = shift;
  return e;
}

GradedExpression::Ptr GradedExpression::sum(Ptr left, Ptr right) {
  auto e = std::shared_ptr<GradedExpression>(new GradedExpression());
  e->kind_ = Kind::sum;
  e->left_ = std::move(left);
  e->right_ = std::move(right);
  return e;
}

GradedExpression::Ptr GradedExpression::twist(int gen, int power, Ptr child) {
  auto e = std::shared_ptr<GradedExpression>(new GradedExpression());
  e->kind_ = Kind::twist;
  e->gen_ = gen;
  e->power_ = power;
  e->child_ = std::move(child);
  return e;
}

bool GradedExpression::equals(const GradedExpression& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::generator:
      return gen_ == other.gen_ && shift_ == other.shift_;
    case Kind::sum:
      return left_->equals(*other.left_) && right_->equals(*other.right_);
    case Kind::twist:
      return gen_ == other.gen_ && power_ == other.power_ &&
             child_->equals(*other.child_);
  }
  return false;
}

std::string GradedExpression::to_string(
    std::span<const std::string> names) const {
  auto name = [&](int g) {
    return g >= 0 && g < static_cast<int>(names.size())
               ? names[static_cast<size_t>(g)]
               : "G" + std::to_string(g);
  };
  switch (kind_) {
    case Kind::generator: {
      std::string s = name(gen_);
      if (shift_ != 0) s = "(shift " + s + " " + std::to_string(shift_) + ")";
      return s;
    }
    case Kind::sum:
      return "(sum " + left_->to_string(names) + " " +
             right_->to_string(names) + ")";
    case Kind::twist:
      return "(T " + name(gen_) + " " + std::to_string(power_) + " " +
             child_->to_string(names) + ")";
  }
  return {};
}

std::vector<long long> GradedExpression::homology_class(
    const PairingLattice& lattice) const {
  switch (kind_) {
    case Kind::generator: {
      std::vector<long long> v = lattice.basis_vector(gen_);
      if (shift_ % 2 != 0) {
        for (long long& x : v) x = -x;
      }
      return v;
    }
    case Kind::sum: {
      std::vector<long long> l = left_->homology_class(lattice);
      const std::vector<long long> r = right_->homology_class(lattice);
      for (size_t i = 0; i < l.size(); ++i) l[i] += r[i];
      return l;
    }
    case Kind::twist: {
      const std::vector<long long> v = child_->homology_class(lattice);
      return dehn_twist_homology(lattice, gen_, v, power_);
    }
  }
  return {};
}

namespace {

struct Tokenizer {
  std::vector<std::string> tokens;
  size_t pos = 0;

  explicit Tokenizer(const std::string& text) {
    std::string current;
    for (char c : text) {
      if (c == '(' || c == ')') {
        if (!current.empty()) { tokens.push_back(current); current.clear(); }
        tokens.push_back(std::string(1, c));
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (!current.empty()) { tokens.push_back(current); current.clear(); }
      } else {
        current += c;
      }
    }
    if (!current.empty()) tokens.push_back(current);
  }

  const std::string& peek() const {
    if (pos >= tokens.size()) throw std::invalid_argument("unexpected end of expression");
    return tokens[pos];
  }
  std::string take() {
    const std::string t = peek();
    ++pos;
    return t;
  }
};

int generator_index(const std::string& token,
                    std::span<const std::string> names) {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == token) return static_cast<int>(i);
  }
  throw std::invalid_argument("unknown generator: " + token);
}

int parse_int(const std::string& token) {
  size_t used = 0;
  const int v = std::stoi(token, &used);
  if (used != token.size()) throw std::invalid_argument("bad integer: " + token);
  return v;
}

GradedExpression::Ptr parse_node(Tokenizer& tz,
                                 std::span<const std::string> names) {
  if (tz.peek() != "(") {
    return GradedExpression::generator(generator_index(tz.take(), names));
  }
  tz.take();  // (
  const std::string head = tz.take();
  GradedExpression::Ptr result;
  if (head == "sum") {
    auto l = parse_node(tz, names);
    auto r = parse_node(tz, names);
    result = GradedExpression::sum(std::move(l), std::move(r));
  } else if (head == "shift") {
    auto child = parse_node(tz, names);
    const int m = parse_int(tz.take());
    if (child->kind() == GradedExpression::Kind::generator) {
      result = GradedExpression::generator(child->gen(), child->shift() + m);
    } else {
      throw std::invalid_argument("shift applies to generators only");
    }
  } else if (head == "T") {
    const int g = generator_index(tz.take(), names);
    const int power = parse_int(tz.take());
    auto child = parse_node(tz, names);
    result = GradedExpression::twist(g, power, std::move(child));
  } else {
    throw std::invalid_argument("unknown expression head: " + head);
  }
  if (tz.take() != ")") throw std::invalid_argument("expected ')'");
  return result;
}

}  // namespace

GradedExpression::Ptr parse_expression(const std::string& text,
                                       std::span<const std::string> names) {
  Tokenizer tz(text);
  auto e = parse_node(tz, names);
  if (tz.pos != tz.tokens.size()) {
    throw std::invalid_argument("trailing tokens in expression");
  }
  return e;
}

namespace {

double generator_phase_of(const RewriteContext& ctx, int g) {
  if (g < 0 || g >= static_cast<int>(ctx.generator_phase.size())) {
    throw std::invalid_argument("rewrite: generator has no declared phase");
  }
  return ctx.generator_phase[static_cast<size_t>(g)];
}

// T_a^{sign}(node) rewritten once, recursively.
GradedExpression::Ptr apply_twist_once(const GradedExpression::Ptr& node,
                                       int a, int sign,
                                       const RewriteContext& ctx,
                                       RewriteMode mode) {
  using GE = GradedExpression;
  const PairingLattice& lat = *ctx.lattice;
  const int n = lat.dimension_parity();

  if (node->kind() == GE::Kind::twist) {
    // Residual node from distribute-only passes: merge powers of the
    // same twist, anything else is out of the rule set.
    if (node->gen() == a) {
      const int merged = node->power() + sign;
      if (merged == 0) return node->child();
      return GE::twist(a, merged, node->child());
    }
    throw GradingError("not reducible: nested twist nodes");
  }

  if (node->kind() == GE::Kind::sum) {
    // Cancellation: T_a(a[m] # y) -> y (forward, even m); the inverse
    // twist cancels a trailing a[m] instead.
    if (mode == RewriteMode::full) {
      if (sign > 0 && node->left()->kind() == GE::Kind::generator &&
          node->left()->gen() == a && node->left()->shift() % 2 == 0) {
        return node->right();
      }
      if (sign < 0 && node->right()->kind() == GE::Kind::generator &&
          node->right()->gen() == a && node->right()->shift() % 2 == 0) {
        return node->left();
      }
    }
    return GE::sum(apply_twist_once(node->left(), a, sign, ctx, mode),
                   apply_twist_once(node->right(), a, sign, ctx, mode));
  }

  // Generator leaf.
  const int g = node->gen();
  const int m = node->shift();
  if (g == a) {
    return GE::generator(a, m + sign * (1 - n));
  }
  if (mode == RewriteMode::distribute_only) {
    return GE::twist(a, sign, node);
  }

  const long long pairing_ab = lat.pairing(a, g);
  if (pairing_ab != 1 && pairing_ab != -1) {
    throw GradingError("not reducible: generators must pair to +-1");
  }
  // Homology forces the parity of the new leaf's shift s:
  //   n even: coefficient of a in T_a(b) is <b,a>, so (-1)^s = <b,a>(-1)^m
  //   n odd:  coefficient is -<a,b>, so (-1)^s = -<a,b>(-1)^m
  // (inverse twists flip the coefficient sign for odd n only).
  long long coeff = (n == 2) ? pairing_ab : -pairing_ab;
  if (n != 2 && sign < 0) coeff = -coeff;
  const int parity =
      ((m % 2 + 2) % 2 + (coeff == 1 ? 0 : 1)) % 2;

  // Unique shift of that parity with phase difference in (-pi, pi).
  const double phi_b = generator_phase_of(ctx, g) + m * kPi;
  const double phi_a = generator_phase_of(ctx, a);
  const double ideal = (phi_b - phi_a) / kPi;  // s near this value
  int s = static_cast<int>(std::lround(ideal));
  if (((s % 2 + 2) % 2) != parity) {
    s += (ideal >= s) ? 1 : -1;
  }
  const double diff = (phi_a + s * kPi) - phi_b;
  if (!(diff > -kPi && diff < kPi) || diff == 0.0) {
    throw GradingError("not reducible: no gradeable shift for the sum rule");
  }
  const auto partner = GE::generator(a, s);
  return sign > 0 ? GE::sum(node, partner) : GE::sum(partner, node);
}

GradedExpression::Ptr normalize(const GradedExpression::Ptr& node,
                                const RewriteContext& ctx, RewriteMode mode) {
  using GE = GradedExpression;
  switch (node->kind()) {
    case GE::Kind::generator:
      return node;
    case GE::Kind::sum:
      return GE::sum(normalize(node->left(), ctx, mode),
                     normalize(node->right(), ctx, mode));
    case GE::Kind::twist: {
      GradedExpression::Ptr cur = normalize(node->child(), ctx, mode);
      const int sign = node->power() >= 0 ? 1 : -1;
      for (int r = 0; r < std::abs(node->power()); ++r) {
        cur = apply_twist_once(cur, node->gen(), sign, ctx, mode);
      }
      return cur;
    }
  }
  return node;
}

}  // namespace

GradedExpression::Ptr graded_twist_rewrite(const GradedExpression::Ptr& expr,
                                           int twist_gen, int power,
                                           const RewriteContext& ctx,
                                           RewriteMode mode) {
  if (ctx.lattice == nullptr) {
    throw std::invalid_argument("rewrite: context needs a lattice");
  }
  if (!ctx.lattice->spherical(twist_gen)) {
    throw std::invalid_argument("rewrite: non-spherical twist generator");
  }
  return normalize(GradedExpression::twist(twist_gen, power, expr), ctx, mode);
}

namespace {

double audit_phase(const GradedExpression::Ptr& node,
                   std::span<const double> phases,
                   std::span<const std::string> names,
                   PhaseAuditReport& report) {
  using GE = GradedExpression;
  switch (node->kind()) {
    case GE::Kind::generator: {
      const int g = node->gen();
      if (g < 0 || g >= static_cast<int>(phases.size())) {
        throw std::invalid_argument("phase_audit: generator has no phase");
      }
      return phases[static_cast<size_t>(g)] + node->shift() * kPi;
    }
    case GE::Kind::twist:
      // Small-loop monodromy returns the phase near its baseline value.
      return audit_phase(node->child(), phases, names, report);
    case GE::Kind::sum: {
      const double l = audit_phase(node->left(), phases, names, report);
      const double r = audit_phase(node->right(), phases, names, report);
      PhaseAuditEntry entry;
      entry.node = node->to_string(names);
      entry.left_phase = l;
      entry.right_phase = r;
      entry.pass = l < r;
      report.pass = report.pass && entry.pass;
      report.entries.push_back(entry);
      return 0.5 * (l + r);
    }
  }
  return 0.0;
}

}  // namespace

PhaseAuditReport phase_audit(const GradedExpression::Ptr& expr,
                             std::span<const double> generator_phase,
                             std::span<const std::string> names) {
  PhaseAuditReport report;
  audit_phase(expr, generator_phase, names, report);
  return report;
}

FamilyTrack family_track(const FamilyModel& model) {
  const auto& u = model.path;
  if (u.size() < 2) {
    throw std::invalid_argument("family_track: need at least two samples");
  }
  FamilyTrack out;
  out.phase.resize(u.size());
  for (size_t j = 0; j < u.size(); ++j) {
    if (std::abs(u[j]) < 1e-15) {
      throw std::invalid_argument("family_track: path passes through 0");
    }
  }
  out.phase[0] = std::arg(u[0]);
  for (size_t j = 1; j < u.size(); ++j) {
    const double step = std::arg(u[j] / u[j - 1]);
    if (std::abs(step) >= 0.25 * kPi) {
      throw std::invalid_argument("family_track: undersampled path");
    }
    out.phase[j] = out.phase[j - 1] + step;
  }

  const bool closed = std::abs(u.front() - u.back()) < 1e-9 * std::abs(u.front());
  if (closed) {
    out.winding = static_cast<int>(
        std::lround((out.phase.back() - out.phase.front()) / kTwoPi));
  }

  // Wall: the lifted phi1 crosses the baseline mod 2pi (even multiples of
  // pi in the difference); odd multiples are the reversed orientation and
  // are rejected.
  const size_t m = u.size() - 1;
  for (size_t j = 0; j < m; ++j) {
    const double d0 = out.phase[j] - model.baseline_phase;
    const double d1 = out.phase[j + 1] - model.baseline_phase;
    if (d0 == d1) continue;
    const double lo = std::min(d0, d1);
    const double hi = std::max(d0, d1);
    // Multiples of pi in (lo, hi], attributed to the segment end; the
    // 1e-12 shift keeps endpoint crossings from flickering with rounding
    // noise in the lifted phase.
    constexpr double tol = 1e-12;
    const long long k_lo = static_cast<long long>(std::floor(lo / kPi)) - 1;
    const long long k_hi = static_cast<long long>(std::ceil(hi / kPi)) + 1;
    for (long long k = k_lo; k <= k_hi; ++k) {
      const double level = k * kPi;
      if (level <= lo + tol || level > hi + tol) continue;
      if (k % 2 != 0) continue;  // phase differs by pi: wrong orientation
      const double t0 = static_cast<double>(j) / m;
      const double t1 = static_cast<double>(j + 1) / m;
      const double frac = std::clamp((level - d0) / (d1 - d0), 0.0, 1.0);
      WallCrossing wall;
      wall.parameter = t0 + frac * (t1 - t0);
      wall.direction = d1 > d0 ? 1 : -1;
      out.walls.push_back(wall);
    }
  }
  return out;
}

}  // namespace slag
