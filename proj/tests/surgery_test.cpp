#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "slag/errors.hpp"
#include "slag/flow.hpp"
#include "slag/shapes.hpp"
#include "slag/surgery.hpp"

using namespace slag;

namespace {
const TorusCY kSquare = TorusCY::unit_square();
}

TEST_CASE("intersection counts match the lattice oracle") {
  struct Pair {
    int p1, q1, p2, q2;
  };
  const std::vector<Pair> cases{{1, 0, 0, 1}, {1, 0, 1, 1},  {1, 0, 1, 2},
                                {2, 1, 1, 1}, {1, 0, 2, -1}, {3, 1, 1, 2},
                                {2, 1, -1, 2}};
  for (const Pair& c : cases) {
    const auto a = straight_line(kSquare, c.p1, c.q1, 64, {0.03, 0.17});
    const auto b = straight_line(kSquare, c.p2, c.q2, 64, {0.0, 0.0});
    const auto pts = intersections(a, b);
    const int expected = std::abs(c.p1 * c.q2 - c.p2 * c.q1);
    CHECK(static_cast<int>(pts.size()) == expected);
    CHECK(oracles::line_crossing_count(c.p1, c.q1, 0.11, c.p2, c.q2, 0.0) ==
          expected);
    // All local data populated consistently.
    const int sign_expected = (c.p1 * c.q2 - c.p2 * c.q1) > 0 ? 1 : -1;
    for (const auto& pt : pts) {
      CHECK(pt.crossing_sign == sign_expected);
      CHECK(pt.theta1 == a.theta(pt.edge_c1));
      CHECK(pt.theta2 == b.theta(pt.edge_c2));
    }
  }
}

TEST_CASE("parallel overlap rejected, disjoint parallels give no points") {
  const auto a = straight_line(kSquare, 1, 0, 16, {0.0, 0.25});
  const auto b = straight_line(kSquare, 1, 0, 24, {0.0, 0.75});
  CHECK(intersections(a, b).empty());
  const auto c = straight_line(kSquare, 1, 0, 16, {0.125, 0.25});
  CHECK_THROWS_AS(intersections(a, c), ParallelIntersection);
}

TEST_CASE("grading window") {
  CHECK(grading_compatible(0.0, 0.25 * kPi));
  CHECK_FALSE(grading_compatible(0.25 * kPi, 0.0));
  CHECK_FALSE(grading_compatible(0.0, kPi));   // boundary excluded
  CHECK_FALSE(grading_compatible(0.0, 0.0));
  CHECK(grading_compatible(0.25 * kPi, kPi));  // the shifted [1] order
}

TEST_CASE("neck moduli dimension") {
  std::vector<IntersectionPoint> pts(1);
  CHECK(neck_moduli_dimension(pts) == 0);
  pts.resize(2);
  CHECK(neck_moduli_dimension(pts) == 1);
  pts.resize(5);
  CHECK(neck_moduli_dimension(pts) == 4);
  pts.clear();
  CHECK_THROWS_AS(neck_moduli_dimension(pts), std::invalid_argument);
}

TEST_CASE("connect sum (1,0) # (1,1): the stable extension class") {
  const auto l1 = straight_line(kSquare, 1, 0, 96, {0.0, 0.25});
  const auto l2 = straight_line(kSquare, 1, 1, 96, {0.0, 0.0});
  const auto sum = connect_sum(l1, l2, NeckParameters{{0.12}});
  REQUIRE(sum.connected());
  const auto& c = sum.single();
  CHECK(c.closure() == std::array<int, 2>{2, 1});
  CHECK(c.maslov() == 0);
  const double phi = sum.average_phase();
  CHECK(phi > 0.0);
  CHECK(phi < 0.25 * kPi);
  // Theta is continuous across the necks and interpolates the two inputs.
  CHECK(c.phase_spread() == doctest::Approx(0.25 * kPi).epsilon(1e-6));

  // Flows to the slope-1/2 line.
  FlowConfig config;
  config.max_time = 20.0;
  const FlowResult r = run_flow(c, config);
  REQUIRE(r.status == FlowStatus::converged_to_line);
  CHECK(r.line_class == std::array<int, 2>{2, 1});
  CHECK(r.final_curve.length() ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-3));
  CHECK(r.final_curve.average_phase() ==
        doctest::Approx(std::atan2(1.0, 2.0)).epsilon(1e-3));
}

TEST_CASE("connect sum (1,1) # (1,0)[1]: the vertical class") {
  const auto l2 = straight_line(kSquare, 1, 1, 96, {0.0, 0.0});
  const auto l1_shift =
      straight_line(kSquare, 1, 0, 96, {0.0, 0.75}).with_grading_shift(1);
  CHECK(l1_shift.theta(0) == kPi);
  const auto sum = connect_sum(l2, l1_shift, NeckParameters{{0.12}});
  REQUIRE(sum.connected());
  const auto& c = sum.single();
  CHECK(c.closure() == std::array<int, 2>{0, 1});
  CHECK(c.maslov() == 0);
  const double phi = sum.average_phase();
  CHECK(phi > 0.25 * kPi);
  CHECK(phi < kPi);

  FlowConfig config;
  config.max_time = 20.0;
  const FlowResult r = run_flow(c, config);
  REQUIRE(r.status == FlowStatus::converged_to_line);
  CHECK(r.line_class == std::array<int, 2>{0, 1});
  CHECK(r.final_curve.length() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("ungraded order rejected") {
  // L2 # L1 without the shift: window (pi/4, 0) fails.
  const auto l2 = straight_line(kSquare, 1, 1, 64, {0.0, 0.0});
  const auto l1 = straight_line(kSquare, 1, 0, 64, {0.0, 0.25});
  CHECK_THROWS_AS(connect_sum(l2, l1, NeckParameters{{0.1}}), GradingError);
  // Equal phases never sum: parallel lines throw on intersection.
  const auto l1b = straight_line(kSquare, 1, 0, 64, {0.0, 0.75});
  CHECK(intersections(l1, l1b).empty());
}

TEST_CASE("homology additivity over random transverse line pairs") {
  SplitMix64 rng(21);
  int done = 0;
  while (done < 12) {
    const int p1 = static_cast<int>(rng.next() % 5) - 2;
    const int q1 = static_cast<int>(rng.next() % 5) - 2;
    const int p2 = static_cast<int>(rng.next() % 5) - 2;
    const int q2 = static_cast<int>(rng.next() % 5) - 2;
    if ((p1 == 0 && q1 == 0) || (p2 == 0 && q2 == 0)) continue;
    if (p1 * q2 - p2 * q1 == 0) continue;
    const auto a = straight_line(kSquare, p1, q1, 96, {0.031, 0.177});
    const auto b = straight_line(kSquare, p2, q2, 96, {0.0, 0.0});
    // Sum in the gradeable order.
    const double d = wrap_principal(b.theta(0) - a.theta(0));
    const DiscreteCurve& left = d > 0 ? a : b;
    const DiscreteCurve& right = d > 0 ? b : a;
    const auto pts = intersections(left, right);
    bool window = !pts.empty();
    for (const auto& pt : pts) {
      window = window && grading_compatible(pt.theta1, pt.theta2);
    }
    if (!window) continue;
    // Safe scale from the actual configuration: below half the pairwise
    // torus distance and half the cyclic gaps along both curves.
    double limit = 0.08;
    for (size_t i = 0; i < pts.size(); ++i) {
      for (size_t j = i + 1; j < pts.size(); ++j) {
        double dist = 10.0;
        for (int tx = -1; tx <= 1; ++tx) {
          for (int ty = -1; ty <= 1; ++ty) {
            dist = std::min(dist, (pts[i].location - pts[j].location -
                                   kSquare.lattice_vector(tx, ty))
                                      .norm());
          }
        }
        limit = std::min(limit, 0.45 * dist);
      }
    }
    auto gap_limit = [&](auto s_of, double total) {
      std::vector<double> s;
      for (size_t i = 0; i < pts.size(); ++i) s.push_back(s_of(i));
      std::sort(s.begin(), s.end());
      for (size_t i = 0; i < s.size(); ++i) {
        const double gap =
            (i + 1 < s.size()) ? s[i + 1] - s[i] : s[0] + total - s[i];
        limit = std::min(limit, 0.45 * gap);
      }
    };
    gap_limit([&](size_t i) { return pts[i].s_on_c1; }, left.length());
    gap_limit([&](size_t i) { return pts[i].s_on_c2; }, right.length());
    if (limit < 1e-3) continue;
    const auto sum = connect_sum(
        left, right, NeckParameters{std::vector<double>(pts.size(), limit)});
    const auto total = sum.total_closure();
    CHECK(total[0] == left.closure()[0] + right.closure()[0]);
    CHECK(total[1] == left.closure()[1] + right.closure()[1]);
    for (const auto& comp : sum.components) CHECK(comp.maslov() == 0);
    const double phi = sum.average_phase();
    CHECK(phi > left.theta(0));
    CHECK(phi < right.theta(0));
    ++done;
  }
}

TEST_CASE("two-point sum (1,0) # (1,2) resolves into two (1,1) components") {
  const auto l1 = straight_line(kSquare, 1, 0, 96, {0.0, 0.25});
  const auto l2 = straight_line(kSquare, 1, 2, 96, {0.0, 0.0});
  const auto pts = intersections(l1, l2);
  REQUIRE(pts.size() == 2);
  const auto sum = connect_sum(l1, l2, NeckParameters{{0.08, 0.08}});
  CHECK(sum.components.size() == 2);
  for (const auto& comp : sum.components) {
    CHECK(comp.closure() == std::array<int, 2>{1, 1});
    CHECK(comp.maslov() == 0);
  }
  CHECK(sum.total_closure() == std::array<int, 2>{2, 2});
}

TEST_CASE("neck scaling: projective class is what matters") {
  const auto l1 = straight_line(kSquare, 1, 0, 128, {0.0, 0.25});
  const auto l2 = straight_line(kSquare, 1, 2, 128, {0.0, 0.0});

  const double s = 0.06;
  const auto base = connect_sum(l1, l2, NeckParameters{{s, s}});
  const auto scaled = connect_sum(l1, l2, NeckParameters{{1.05 * s, 1.05 * s}});
  const auto skewed = connect_sum(l1, l2, NeckParameters{{1.05 * s, s}});

  REQUIRE(base.components.size() == 2);
  REQUIRE(scaled.components.size() == 2);
  REQUIRE(skewed.components.size() == 2);

  // Common rescaling is hamiltonian: flux vanishes on every component.
  // Changing the ratio moves each component by a nonzero flux (the two
  // components sweep opposite areas).
  for (size_t i = 0; i < 2; ++i) {
    CHECK(std::abs(oracles::strip_flux(base.components[i],
                                       scaled.components[i])) < 1e-12);
    CHECK(std::abs(oracles::strip_flux(base.components[i],
                                       skewed.components[i])) > 1e-5);
  }
}

TEST_CASE("flux_step agrees with the closed-form strip area") {
  const auto a = perturbed_line(kSquare, 1, 0, 64, 0.05, 2);
  const auto b = a.translated({0.013, 0.027});
  CHECK(flux_step(a, b) ==
        doctest::Approx(oracles::strip_flux(a, b)).epsilon(1e-12));
  const auto c = perturbed_line(kSquare, 2, 1, 96, 0.04, 9);
  const auto d = c.translated({-0.008, 0.019});
  CHECK(flux_step(c, d) ==
        doctest::Approx(oracles::strip_flux(c, d)).epsilon(1e-12));
}

TEST_CASE("necks too large rejected") {
  const auto l1 = straight_line(kSquare, 1, 0, 64, {0.0, 0.25});
  const auto l2 = straight_line(kSquare, 1, 2, 64, {0.0, 0.0});
  // Two crossings half a torus apart: scales must stay below ~0.25.
  CHECK_THROWS_AS(connect_sum(l1, l2, NeckParameters{{0.3, 0.3}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(connect_sum(l1, l2, NeckParameters{{0.05}}),
                  std::invalid_argument);  // wrong count
  CHECK_THROWS_AS(connect_sum(l1, l2, NeckParameters{{-0.05, 0.05}}),
                  std::invalid_argument);
}
