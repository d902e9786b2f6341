#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace collapse {

struct ScalarOptimum {
  double argument = 0.0;
  double value = 0.0;
};

struct PlanarOptimum {
  double alpha = 0.0;
  double beta = 0.0;
  double value = 0.0;
};

struct IntervalSearchOptions {
  std::size_t grid_points = 2001;
  double tolerance = 1e-9;
  /// Grid local minima refined by golden section, best first.
  std::size_t refined_minima = 3;
};

struct TriangleSearchOptions {
  std::size_t subdivisions = 200;
  double tolerance = 1e-7;
  /// Objective satisfies f(a, b) == f(b, a); only a <= b is searched.
  bool symmetric = true;
};

/// Golden-section minimum of f on [lo, hi] down to a bracket of width tol.
ScalarOptimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Uniform grid over [lo, hi] followed by golden-section refinement of the
/// best grid cells. Returns nullopt when the interval is empty (hi < lo by
/// more than 1e-12); a slightly inverted interval collapses to a point.
std::optional<ScalarOptimum> minimize_on_interval(const std::function<double(double)>& f, double lo, double hi,
                                                  const IntervalSearchOptions& options = {});

/// Maximum of f(a, b) over {a, b >= floor, a + b <= ceiling_sum} using a
/// barycentric grid and alternating golden-section refinement. nullopt when
/// the triangle is empty.
std::optional<PlanarOptimum> maximize_on_triangle(const std::function<double(double, double)>& f, double floor,
                                                  double ceiling_sum, const TriangleSearchOptions& options = {});

}  // namespace collapse
