#include <doctest.h>

#include <cmath>

#include "collapse/bounds.hpp"
#include "collapse/canonical.hpp"
#include "collapse/region.hpp"
#include "support.hpp"

using namespace collapse;
using support::error_of;
using support::to_vec;

namespace {

double inner_tv(double a, double tau, int m) { return oracle::product_tv({1.0 - a, a}, {1.0 - a - tau, a + tau}, m); }

double inner1_tv(double eps, double delta, double a, double tau, int m) {
  return oracle::product_tv({delta, 1.0 - a - delta, a}, {eps, 1.0 - a - tau - eps, a + tau}, m);
}

// Literal five-atom outer pair; the grid below never lands on a = eps.
double outer1_tv(double eps, double delta, double a, double b, double tau, int m) {
  const double g = delta - eps;
  const std::vector<double> p{(a * g - eps * tau) / (a - eps), a * (a + tau - delta) / (a - eps), 1.0 - tau - a - b, b,
                              0.0};
  const std::vector<double> q{0.0, a, 1.0 - tau - a - b, b * (b + tau - delta) / (b - eps),
                              (b * g - eps * tau) / (b - eps)};
  return oracle::product_tv(p, q, m);
}

constexpr int kOracleGrid = 100000;

}  // namespace

TEST_CASE("thm1_bounds examples") {
  const auto one = thm1_bounds(0.11, 1);
  CHECK(one.feasible);
  CHECK(one.lower == 0.11);
  CHECK(one.upper == 0.11);

  const auto two = thm1_bounds(0.11, 2);
  CHECK(std::abs(two.upper - (1.0 - 0.89 * 0.89)) <= 1e-12);
  CHECK(std::abs(two.upper - oracle::product_tv(to_vec(outer_pair(0.11).p()), to_vec(outer_pair(0.11).q()), 2)) <=
        1e-12);
  const auto grid = oracle::grid_min([](double a) { return inner_tv(a, 0.11, 2); }, 0.0, 0.89, kOracleGrid);
  CHECK(two.lower <= grid.second + 1e-12);
  CHECK(two.lower >= grid.second - 1e-9);
  // Two symmetric binary draws are no more informative than one.
  CHECK(std::abs(two.lower - 0.11) <= 1e-12);
}

TEST_CASE("thm1 lower bound matches a fine alpha grid for several m") {
  for (const double tau : {0.05, 0.11, 0.3, 0.7}) {
    for (const int m : {3, 4, 7}) {
      const auto b = thm1_bounds(tau, m);
      const auto grid = oracle::nested_grid_min([&](double a) { return inner_tv(a, tau, m); }, 0.0, 1.0 - tau, 2000);
      INFO("tau=" << tau << " m=" << m << " diff=" << b.lower - grid.second);
      CHECK(b.lower <= grid.second + 1e-9);
      CHECK(b.lower >= grid.second - 1e-9);
      REQUIRE(b.lower_alpha);
      CHECK(std::abs(inner_tv(*b.lower_alpha, tau, m) - b.lower) <= 1e-12);
    }
  }
}

TEST_CASE("thm1 tightness") {
  for (const double tau : {0.0, 0.11, 0.5, 1.0}) {
    for (int m = 1; m <= 6; ++m) {
      const auto b = thm1_bounds(tau, m);
      const auto outer = outer_pair(tau);
      CHECK(std::abs(product_tv(ProductSpec(outer, m)) - b.upper) <= 1e-12);
      for (int i = 0; i <= 50; ++i) {
        const double a = (1.0 - tau) * i / 50.0;
        CHECK(product_tv(ProductSpec(inner_pair(a, tau), m)) >= b.lower - 1e-12);
      }
    }
  }
}

TEST_CASE("thm2_bounds examples") {
  for (int m = 1; m <= 4; ++m) CHECK_FALSE(thm2_bounds(0.0, 0.2, 0.1, m).feasible);
  const auto one = thm2_bounds(0.0, 0.1, 0.11, 1);
  CHECK(one.feasible);
  CHECK(one.lower == 0.11);
  CHECK(one.upper == 0.11);

  const double eps = 0.02;
  const double delta = 0.1;
  const double tau = 0.11;
  const auto b = thm2_bounds(eps, delta, tau, 5);
  REQUIRE(b.feasible);
  CHECK(std::abs(b.upper - (1.0 - std::pow(0.89, 5))) <= 1e-12);
  const double split = 1.0 - tau * delta / (delta - eps);
  const auto g1 =
      oracle::nested_grid_min([&](double a) { return inner1_tv(eps, delta, a, tau, 5); }, 0.0, split, 1000);
  const auto g2 = oracle::nested_grid_min([&](double a) { return inner_tv(a, tau, 5); }, split, 1.0 - tau, 1000);
  const double truth = std::min(g1.second, g2.second);
  CHECK(b.lower <= truth + 1e-12);
  CHECK(b.lower >= truth - 1e-9);
  CHECK(b.lower_branch == (g1.second <= g2.second ? 1 : 2));
}

TEST_CASE("thm2 feasibility boundary is inclusive") {
  CHECK(thm2_bounds(0.0, 0.2, 0.2, 3).feasible);
  CHECK(thm2_bounds(0.05, 0.1, 0.05, 3).feasible);
  CHECK_FALSE(thm2_bounds(0.05, 0.1, 0.0499, 3).feasible);
}

TEST_CASE("thm3_bounds examples") {
  for (int m = 1; m <= 3; ++m) CHECK_FALSE(thm3_bounds(0.05, 0.1, 0.8, m).feasible);
  const auto one = thm3_bounds(0.05, 0.1, 0.11, 1);
  CHECK(one.feasible);
  CHECK(one.lower == 0.11);
  CHECK(one.upper == 0.11);

  const auto below = thm3_bounds(0.05, 0.1, 0.05 - 1e-6, 3);
  const auto plain = thm1_bounds(0.05 - 1e-6, 3);
  CHECK(below.regime == BoundRegime::below_gap);
  CHECK(below.lower == plain.lower);
  CHECK(below.upper == plain.upper);
  CHECK(thm3_bounds(0.05, 0.1, 0.05, 3).regime == BoundRegime::hexagon_low);
}

TEST_CASE("thm3 bounds match oracle grids") {
  const double eps = 0.05;
  const double delta = 0.1;
  const double tau = 0.11;
  const int m = 3;
  const auto b = thm3_bounds(eps, delta, tau, m);
  REQUIRE(b.feasible);
  CHECK(b.regime == BoundRegime::hexagon_low);
  const double gap = delta - eps;
  const double lo = eps * tau / gap;
  const double hi = 1.0 - delta * tau / gap;
  const auto g = oracle::nested_grid_min([&](double a) { return inner_tv(a, tau, m); }, lo, hi, 1000);
  CHECK(b.lower <= g.second + 1e-12);
  CHECK(b.lower >= g.second - 1e-9);

  const double floor = eps * tau / gap;
  const double grid_max =
      oracle::triangle_grid_max([&](double a, double c) { return outer1_tv(eps, delta, a, c, tau, m); }, floor + 1e-9,
                                1.0 - tau - 1e-9, 300);
  CHECK(b.upper >= grid_max - 1e-9);
  CHECK(b.upper <= grid_max + 1e-4);
  REQUIRE(b.upper_argmax);
  CHECK(b.upper <= thm1_bounds(tau, m).upper + 1e-12);
}

TEST_CASE("thm3 high regime and its infeasible edge") {
  const double eps = 0.5;
  const double delta = 0.6;
  const auto b = thm3_bounds(eps, delta, 0.11, 3);
  REQUIRE(b.feasible);
  CHECK(b.regime == BoundRegime::hexagon_high);
  CHECK(b.lower <= b.upper);
  // (delta - eps)/(2 - delta - eps) = 0.1111...
  CHECK_FALSE(thm3_bounds(eps, delta, 0.112, 3).feasible);
  const auto pair = outer2_pair(eps, delta, 0.44, 0.44, 0.11);
  CHECK(product_tv(ProductSpec(pair, 3)) <= b.upper + 1e-12);
}

TEST_CASE("band invariants") {
  const std::vector<ConstraintSpec> specs{
      ConstraintSpec::unconstrained(0.11), ConstraintSpec::with_collapse(0.0, 0.1, 0.11),
      ConstraintSpec::with_collapse(0.02, 0.1, 0.11), ConstraintSpec::without_collapse_or_augmentation(0.05, 0.1, 0.11),
      ConstraintSpec::without_collapse_or_augmentation(0.03, 0.1, 0.11)};
  for (const auto& spec : specs) {
    const auto band = evolution_band(spec, 10);
    REQUIRE(band.entries.size() == 10);
    CHECK(band.entries[0].lower == 0.11);
    CHECK(band.entries[0].upper == 0.11);
    for (std::size_t i = 0; i < band.entries.size(); ++i) {
      const auto& e = band.entries[i];
      CHECK(e.m == static_cast<int>(i) + 1);
      REQUIRE(e.feasible);
      CHECK(0.0 <= e.lower);
      CHECK(e.lower <= e.upper);
      CHECK(e.upper <= 1.0);
      if (i > 0) {
        CHECK(e.upper >= band.entries[i - 1].upper - 1e-12);
        CHECK(e.lower >= band.entries[i - 1].lower - 1e-12);
      }
    }
  }
}

TEST_CASE("unconstrained band upper column is closed form") {
  const auto band = evolution_band(ConstraintSpec::unconstrained(0.11), 10);
  for (const auto& e : band.entries) CHECK(std::abs(e.upper - (1.0 - std::pow(0.89, e.m))) <= 1e-12);
}

TEST_CASE("a collapse constraint lifts the lower band") {
  const auto plain = evolution_band(ConstraintSpec::unconstrained(0.11), 10);
  const auto collapsed = evolution_band(ConstraintSpec::with_collapse(0.0, 0.1, 0.11), 10);
  for (int m = 2; m <= 10; ++m) CHECK(collapsed.entries[m - 1].lower > plain.entries[m - 1].lower + 1e-6);
  for (int m = 2; m <= 5; ++m) {
    const auto grid = oracle::nested_grid_min([&](double a) { return inner1_tv(0.0, 0.1, a, 0.11, m); }, 0.0,
                                              1.0 - 0.11 * 0.1 / 0.1, 500);
    const auto binary = oracle::nested_grid_min([&](double a) { return inner_tv(a, 0.11, m); }, 0.89, 0.89, 1);
    const double truth = std::min(grid.second, binary.second);
    CHECK(collapsed.entries[m - 1].lower <= truth + 1e-12);
    CHECK(collapsed.entries[m - 1].lower >= truth - 1e-9);
  }
}

TEST_CASE("separation_m") {
  const auto h0 = ConstraintSpec::without_collapse_or_augmentation(0.05, 0.1, 0.11);
  const auto h1 = ConstraintSpec::with_collapse(0.02, 0.1, 0.11);
  CHECK_FALSE(separation_m(h0, h1, 1));
  CHECK_FALSE(separation_m(h0, h1, 3));
  CHECK_FALSE(separation_m(h0, ConstraintSpec::with_collapse(0.05, 0.1, 0.11), 10));
  // (0, tau)-collapse with d_TV = tau pins the region to the outer one, so the
  // H1 band collapses onto 1 - (1 - tau)^m and clears H0 from m = 2 on.
  const auto pinned = ConstraintSpec::with_collapse(0.0, 0.11, 0.11);
  CHECK(std::abs(thm2_bounds(0.0, 0.11, 0.11, 4).lower - (1.0 - std::pow(0.89, 4))) <= 1e-12);
  CHECK(separation_m(h0, pinned, 10) == 2);

  CHECK(error_of([&] { separation_m(h1, h1, 5); }) == Errc::invalid_argument);
  CHECK(error_of([&] { separation_m(h0, h0, 5); }) == Errc::invalid_argument);
  CHECK(error_of([&] { separation_m(h0, ConstraintSpec::with_collapse(0.02, 0.1, 0.12), 5); }) == Errc::invalid_argument);
}

TEST_CASE("witness pairs attain both bands at m = 6") {
  // The H1 minimizer is an inner1 pair with (0.02, 0.1)-collapse; the H0
  // maximizer is an outer1 corner touching (0.05, 0.1) and (0.9, 0.95).
  const auto h1 = thm2_bounds(0.02, 0.1, 0.11, 6);
  const auto h0 = thm3_bounds(0.05, 0.1, 0.11, 6);
  REQUIRE(h1.lower_alpha);
  REQUIRE(h0.upper_argmax);
  const auto w1 = inner1_pair(0.02, 0.1, *h1.lower_alpha, 0.11);
  CHECK(has_mode_collapse(region_from_pair(w1), CollapsePoint(0.02, 0.1)));
  CHECK(std::abs(product_tv(ProductSpec(w1, 6)) - h1.lower) <= 1e-12);

  const auto masses = detail::outer1_masses(0.05, 0.1, h0.upper_argmax->alpha, h0.upper_argmax->beta, 0.11);
  const auto w0 = collapse::make_pair(masses.p, masses.q);
  CHECK(std::abs(total_variation(w0) - 0.11) <= 1e-9);
  CHECK(boundary_delta_at(region_from_pair(w0), 0.05) <= 0.1 + 1e-9);
  CHECK(std::abs(product_tv(ProductSpec(w0, 6)) - h0.upper) <= 1e-9);
  CHECK(h1.lower < h0.upper);
}

TEST_CASE("argument validation") {
  CHECK(error_of([] { thm1_bounds(1.5, 2); }) == Errc::invalid_argument);
  CHECK(error_of([] { thm1_bounds(0.1, 0); }) == Errc::invalid_argument);
  CHECK(error_of([] { thm2_bounds(0.2, 0.1, 0.3, 2); }) == Errc::invalid_argument);
  CHECK(error_of([] { evolution_band(ConstraintSpec::unconstrained(0.1), 0); }) == Errc::invalid_argument);
  CHECK(error_of([] { ConstraintSpec::with_collapse(0.1, 0.1, 0.2); }) == Errc::invalid_argument);
}

TEST_CASE("hexagon upper bound misses regions tangent left of eps") {
  // Q is a point mass, so R(P, Q) = (0,0), (0,tau), (1,1): tangent to the tau
  // line at epsilon = 0. It avoids (0.02, 0.1) and (0.9, 0.98), yet its product
  // TV is the unconstrained maximum 1 - (1 - tau)^m, above the hexagon family.
  const double tau = 0.081;
  const std::vector<double> p{1.0 - tau, tau};
  const std::vector<double> q{1.0, 0.0};
  const auto pts = oracle::subset_points(p, q);
  REQUIRE(oracle::boundary_at(pts, 0.02) < 0.1);
  REQUIRE(oracle::boundary_at(pts, 0.9) < 0.98);
  std::vector<std::pair<double, double>> swapped;
  for (const auto& [e, d] : pts) swapped.emplace_back(d, e);
  REQUIRE(oracle::boundary_at(swapped, 0.02) < 0.1);

  for (int m = 2; m <= 4; ++m) {
    const double value = oracle::product_tv(p, q, m);
    CHECK(value == doctest::Approx(1.0 - std::pow(1.0 - tau, m)).epsilon(1e-12));
    const auto b = thm3_bounds(0.02, 0.1, tau, m);
    REQUIRE(b.feasible);
    CHECK(b.regime == BoundRegime::hexagon_low);
    CHECK(value > b.upper + 1e-6);
  }
}
