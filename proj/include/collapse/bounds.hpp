#pragma once

#include <optional>
#include <string>
#include <vector>

#include "collapse/region.hpp"
#include "collapse/search.hpp"

namespace collapse {

enum class ConstraintKind { none, has_collapse, no_collapse_no_augmentation };

std::string to_string(ConstraintKind kind);

/// Family of pairs with d_TV(P, Q) = tau, optionally restricted by an
/// (eps, delta) mode-collapse condition.
struct ConstraintSpec {
  static ConstraintSpec unconstrained(double tau);
  static ConstraintSpec with_collapse(double eps, double delta, double tau);
  static ConstraintSpec without_collapse_or_augmentation(double eps, double delta, double tau);

  double tau = 0.0;
  std::optional<CollapsePoint> collapse;
  ConstraintKind kind = ConstraintKind::none;
};

struct BoundOptions {
  IntervalSearchOptions interval{};
  TriangleSearchOptions triangle{};
};

/// Which construction produced a bound; reported alongside the numbers.
enum class BoundRegime {
  unconstrained,      // thm1 pair family
  collapse,           // thm2, tau >= delta - eps
  below_gap,          // thm3 with tau < delta - eps: reduces to thm1
  hexagon_low,        // thm3, delta + eps <= 1
  hexagon_high,       // thm3, delta + eps > 1
  infeasible,
};

struct TvBounds {
  bool feasible = false;
  double lower = 0.0;
  double upper = 0.0;
  BoundRegime regime = BoundRegime::infeasible;
  /// Minimizing alpha of the lower bound (absent for m = 1 or infeasible).
  std::optional<double> lower_alpha;
  /// thm2 only: 1 when the ternary branch attained the minimum, 2 for the binary branch.
  int lower_branch = 0;
  /// thm3 hexagon regimes only: maximizing (alpha, beta) of the upper bound.
  std::optional<PlanarOptimum> upper_argmax;
};

/// Range of d_TV(P^m, Q^m) over all pairs with d_TV(P, Q) = tau.
TvBounds thm1_bounds(double tau, int m, const BoundOptions& options = {});

/// Same range restricted to pairs with (eps, delta)-mode collapse.
TvBounds thm2_bounds(double eps, double delta, double tau, int m, const BoundOptions& options = {});

/// Same range restricted to pairs with neither (eps, delta)-mode collapse
/// nor (eps, delta)-mode augmentation.
TvBounds thm3_bounds(double eps, double delta, double tau, int m, const BoundOptions& options = {});

/// Dispatches on spec.kind.
TvBounds bounds_for(const ConstraintSpec& spec, int m, const BoundOptions& options = {});

struct BandEntry {
  int m = 1;
  double lower = 0.0;
  double upper = 0.0;
  bool feasible = false;
};

struct EvolutionBand {
  std::vector<BandEntry> entries;
};

EvolutionBand evolution_band(const ConstraintSpec& spec, int m_max, const BoundOptions& options = {});

/// Smallest m <= m_max at which the H1 (has-collapse) band lies strictly
/// above the H0 (no collapse or augmentation) band.
std::optional<int> separation_m(const ConstraintSpec& h0, const ConstraintSpec& h1, int m_max,
                                const BoundOptions& options = {});

}  // namespace collapse
