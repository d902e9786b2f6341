#pragma once

#include <array>

#include "collapse/distribution.hpp"

namespace collapse {

/// Binary pair ([1-a, a], [1-a-tau, a+tau]) for 0 <= a <= 1 - tau. Its region
/// is the triangle touching the slope-one line at (1-a-tau, 1-a).
DistributionPair inner_pair(double alpha, double tau);

/// Ternary pair ([tau, 1-tau, 0], [0, 1-tau, tau]); the largest region with
/// total variation tau.
DistributionPair outer_pair(double tau);

/// Ternary pair ([delta, 1-a-delta, a], [eps, 1-a-tau-eps, a+tau]) for
/// 0 <= a <= 1 - tau*delta/(delta-eps): the inner region forced through (eps, delta).
DistributionPair inner1_pair(double eps, double delta, double alpha, double tau);

/// Same formulas as inner_pair; used for 1 - tau*delta/(delta-eps) <= a <= 1 - tau.
DistributionPair inner2_pair(double alpha, double tau);

/// Five-atom pair whose region passes through (eps, delta) and
/// (1-delta, 1-eps) and touches the slope-one line between (a, a+tau) and
/// (1-tau-b, 1-b). Requires delta + eps <= 1.
DistributionPair outer1_pair(double eps, double delta, double alpha, double beta, double tau);

/// Mirror of outer1_pair for delta + eps > 1, with (1-delta, 1-eps) taking
/// the role of (eps, delta).
DistributionPair outer2_pair(double eps, double delta, double alpha, double beta, double tau);

namespace detail {

struct OuterMasses {
  std::array<double, 5> p;
  std::array<double, 5> q;
};

/// Unchecked outer1 masses for the optimizers. The removable singularity at
/// a = eps (reached when tau = delta - eps) is resolved by its limit, and
/// round-off negatives are clamped to zero.
OuterMasses outer1_masses(double eps, double delta, double alpha, double beta, double tau);

/// outer2 masses via outer1 with (eps, delta) -> (1-delta, 1-eps).
OuterMasses outer2_masses(double eps, double delta, double alpha, double beta, double tau);

}  // namespace detail

}  // namespace collapse
