#include <doctest.h>

#include <cmath>

#include "collapse/search.hpp"

using namespace collapse;

TEST_CASE("golden section finds a smooth minimum") {
  const auto r = golden_section_minimize([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-10);
  CHECK(std::abs(r.argument - 0.3) <= 1e-9);
  CHECK(r.value <= 1e-18);
  const auto edge = golden_section_minimize([](double x) { return x; }, 0.2, 1.0, 1e-10);
  CHECK(edge.argument == 0.2);
}

TEST_CASE("interval search picks the global minimum among several") {
  const auto f = [](double x) { return std::cos(12.0 * x) + 0.3 * x; };
  const auto r = minimize_on_interval(f, 0.0, 2.0);
  REQUIRE(r);
  double brute = 1e9;
  for (int i = 0; i <= 200000; ++i) brute = std::min(brute, f(2.0 * i / 200000));
  CHECK(r->value <= brute + 1e-12);
  CHECK(r->value >= brute - 1e-7);
}

TEST_CASE("interval search handles kinks") {
  const auto r = minimize_on_interval([](double x) { return std::abs(x - 0.123456789); }, 0.0, 1.0);
  REQUIRE(r);
  CHECK(std::abs(r->argument - 0.123456789) <= 1e-8);
}

TEST_CASE("empty and degenerate intervals") {
  CHECK_FALSE(minimize_on_interval([](double x) { return x; }, 0.5, 0.4));
  const auto point = minimize_on_interval([](double x) { return x * 2.0; }, 0.5, 0.5);
  REQUIRE(point);
  CHECK(point->argument == 0.5);
  CHECK(point->value == 1.0);
  CHECK(minimize_on_interval([](double x) { return x; }, 0.5, 0.5 - 1e-13));
}

TEST_CASE("triangle search finds an interior maximum") {
  const auto f = [](double a, double b) { return -(a - 0.2) * (a - 0.2) - (b - 0.2) * (b - 0.2); };
  const auto r = maximize_on_triangle(f, 0.05, 0.9);
  REQUIRE(r);
  CHECK(r->value >= -1e-12);
  CHECK(std::abs(r->alpha - 0.2) <= 1e-6);
  CHECK(std::abs(r->beta - 0.2) <= 1e-6);
}

TEST_CASE("triangle search finds a maximum on the hypotenuse") {
  TriangleSearchOptions options;
  options.symmetric = false;
  const auto f = [](double a, double b) { return 2.0 * a + b - 3.0 * (a - 0.5) * (a - 0.5); };
  const auto r = maximize_on_triangle(f, 0.0, 1.0, options);
  REQUIRE(r);
  double brute = -1e9;
  for (int i = 0; i <= 1000; ++i) {
    for (int j = 0; i + j <= 1000; ++j) brute = std::max(brute, f(i / 1000.0, j / 1000.0));
  }
  CHECK(r->value >= brute - 1e-9);
  CHECK(r->alpha + r->beta <= 1.0 + 1e-12);
  CHECK(r->alpha >= 0.0);
  CHECK(r->beta >= 0.0);
}

TEST_CASE("empty triangle") {
  CHECK_FALSE(maximize_on_triangle([](double, double) { return 0.0; }, 0.6, 1.0));
  const auto corner = maximize_on_triangle([](double a, double b) { return a + b; }, 0.5, 1.0);
  REQUIRE(corner);
  CHECK(corner->value == doctest::Approx(1.0));
}
