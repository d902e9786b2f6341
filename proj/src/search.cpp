#include "collapse/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace collapse {

namespace {

constexpr double kEmptyTolerance = 1e-12;
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

}  // namespace

ScalarOptimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (hi < lo) std::swap(lo, hi);
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  ScalarOptimum best{c, fc};
  if (fd < best.value) best = {d, fd};
  // Bracket ends are evaluated too; the objective may be minimal at a kink.
  for (double x : {a, b}) {
    const double fx = f(x);
    if (fx < best.value) best = {x, fx};
  }
  return best;
}

std::optional<ScalarOptimum> minimize_on_interval(const std::function<double(double)>& f, double lo, double hi,
                                                  const IntervalSearchOptions& options) {
  if (hi < lo - kEmptyTolerance) return std::nullopt;
  if (hi <= lo) {
    const double x = 0.5 * (lo + hi);
    return ScalarOptimum{x, f(x)};
  }
  const std::size_t n = std::max<std::size_t>(options.grid_points, 2);
  std::vector<double> xs(n);
  std::vector<double> fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    fs[i] = f(xs[i]);
  }
  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || fs[i] <= fs[i - 1];
    const bool right_ok = i + 1 == n || fs[i] <= fs[i + 1];
    if (left_ok && right_ok) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
  if (minima.size() > options.refined_minima) minima.resize(options.refined_minima);

  const auto grid_best = static_cast<std::size_t>(std::distance(fs.begin(), std::min_element(fs.begin(), fs.end())));
  ScalarOptimum best{xs[grid_best], fs[grid_best]};
  for (std::size_t i : minima) {
    const double a = xs[i == 0 ? 0 : i - 1];
    const double b = xs[i + 1 == n ? n - 1 : i + 1];
    const ScalarOptimum refined = golden_section_minimize(f, a, b, options.tolerance);
    if (refined.value < best.value) best = refined;
  }
  return best;
}

std::optional<PlanarOptimum> maximize_on_triangle(const std::function<double(double, double)>& f, double floor,
                                                  double ceiling_sum, const TriangleSearchOptions& options) {
  double span = ceiling_sum - 2.0 * floor;
  if (span < -kEmptyTolerance) return std::nullopt;
  span = std::max(span, 0.0);
  if (span == 0.0) return PlanarOptimum{floor, floor, f(floor, floor)};

  const std::size_t n = std::max<std::size_t>(options.subdivisions, 1);
  const double step = span / static_cast<double>(n);
  PlanarOptimum best{floor, floor, f(floor, floor)};
  for (std::size_t i = 0; i <= n; ++i) {
    const std::size_t j_begin = options.symmetric ? i : 0;
    for (std::size_t j = j_begin; i + j <= n; ++j) {
      const double a = floor + step * static_cast<double>(i);
      const double b = floor + step * static_cast<double>(j);
      const double v = f(a, b);
      if (v > best.value) best = {a, b, v};
    }
  }

  // Alternating golden-section ascent inside a shrinking window.
  double window = step;
  for (int round = 0; round < 60 && window > options.tolerance; ++round) {
    const double before = best.value;
    {
      const double lo = std::max(floor, best.alpha - window);
      const double hi = std::min(ceiling_sum - best.beta, best.alpha + window);
      if (hi > lo) {
        const double beta = best.beta;
        const auto r = golden_section_minimize([&](double a) { return -f(a, beta); }, lo, hi, options.tolerance);
        if (-r.value > best.value) best = {r.argument, beta, -r.value};
      }
    }
    {
      const double lo = std::max(floor, best.beta - window);
      const double hi = std::min(ceiling_sum - best.alpha, best.beta + window);
      if (hi > lo) {
        const double alpha = best.alpha;
        const auto r = golden_section_minimize([&](double b) { return -f(alpha, b); }, lo, hi, options.tolerance);
        if (-r.value > best.value) best = {alpha, r.argument, -r.value};
      }
    }
    {
      // Trade mass between alpha and beta at fixed alpha + beta; follows
      // ridges on the alpha + beta = ceiling_sum edge.
      const double lo = std::max(floor - best.alpha, -window);
      const double hi = std::min(best.beta - floor, window);
      if (hi > lo) {
        const double alpha = best.alpha;
        const double beta = best.beta;
        const auto r =
            golden_section_minimize([&](double t) { return -f(alpha + t, beta - t); }, lo, hi, options.tolerance);
        if (-r.value > best.value) best = {alpha + r.argument, beta - r.argument, -r.value};
      }
    }
    if (best.value - before <= 1e-15) window *= 0.5;
  }
  return best;
}

}  // namespace collapse
