#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "collapse/distribution.hpp"
#include "collapse/samples.hpp"

namespace collapse {

/// Densities that are constant on [breaks[i], breaks[i+1]).
struct PiecewiseUniformPair {
  std::vector<double> breaks;
  std::vector<double> p_density;
  std::vector<double> q_density;
};

struct PiecewiseReduction {
  /// One atom per likelihood-ratio level set, in order of first appearance.
  DistributionPair pair;
  /// Raw integrals before renormalization.
  double p_mass;
  double q_mass;
};

/// Bins the pieces by likelihood ratio p/q and renormalizes each side. The
/// reduced pair has the same region and f-divergences as the densities.
PiecewiseReduction reduce_piecewise(const PiecewiseUniformPair& densities);

/// n draws from the piecewise-uniform density over the given breaks.
SampleSet sample_piecewise(const std::vector<double>& breaks, const std::vector<double>& density, std::size_t n,
                           std::uint64_t seed);

}  // namespace collapse
