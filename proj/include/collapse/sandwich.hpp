#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "collapse/bounds.hpp"
#include "collapse/distribution.hpp"

namespace collapse {

/// Random pair on 1..max_support atoms drawn from a mix of generators:
/// independent flat and spiky Dirichlet pairs, mixtures Q = (1-l)P + lR, and
/// sparse pairs with some atoms zeroed in P or Q.
DistributionPair random_pair(std::mt19937_64& rng, std::size_t max_support);

struct SandwichConfig {
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::size_t max_support = 6;
  int max_m = 4;
  std::vector<CollapsePoint> points{CollapsePoint(0.02, 0.1), CollapsePoint(0.05, 0.1)};
  double slack = 1e-9;
  /// When set, only pairs qualifying for this constraint kind at one of the
  /// points count as trials, and only that theorem is checked.
  std::optional<ConstraintKind> only;
  /// Test hook: subtracted from every upper bound so the harness must fail.
  double corrupt_upper = 0.0;
  BoundOptions bounds{};
};

struct SandwichViolation {
  std::size_t trial = 0;
  DistributionPair pair;
  ConstraintKind kind = ConstraintKind::none;
  std::optional<CollapsePoint> point;
  int m = 1;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool feasible = true;
};

struct SandwichReport {
  std::size_t trials = 0;
  std::size_t draws = 0;
  /// Sandwich checks performed per kind, indexed by ConstraintKind.
  std::size_t checks[3] = {0, 0, 0};
  std::vector<SandwichViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Draws random pairs, classifies each against the collapse points via its
/// region and asserts lower - slack <= d_TV(P^m, Q^m) <= upper + slack for
/// the matching theorem and every m in 1..max_m.
SandwichReport run_sandwich(const SandwichConfig& config);

}  // namespace collapse
