#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "collapse/samples.hpp"

namespace collapse {

/// Equal-weight isotropic 2-D Gaussian mixture.
struct ModeSpec {
  /// Requires >= 1 center, std > 0 and quality_x > 0.
  ModeSpec(std::vector<std::array<double, 2>> mode_centers, double mode_std, double quality_multiplier = 3.0);

  std::vector<std::array<double, 2>> centers;
  double stddev;
  double quality_x;

  /// Radius around a center that counts as high quality.
  double quality_radius() const noexcept { return quality_x * stddev; }
};

/// Eight modes (cos(2 pi i / 8), sin(2 pi i / 8)), i = 1..8, std 0.01.
ModeSpec ring_spec();

/// 25 modes (-4 + 2i, -4 + 2j), i, j = 0..4, std 0.05.
ModeSpec grid_spec();

/// n draws: uniform mode index, then an isotropic Gaussian around it.
SampleSet sample_mixture(const ModeSpec& spec, std::size_t n, std::uint64_t seed);

/// Index of the nearest center; ties go to the lowest index.
std::size_t nearest_mode(const ModeSpec& spec, double x, double y);

/// Fraction of samples within quality_x * std of their nearest center.
double high_quality_fraction(const SampleSet& samples, const ModeSpec& spec);

/// Centers that are the nearest center of at least one high-quality sample.
std::size_t count_modes(const SampleSet& samples, const ModeSpec& spec);

struct ReverseKlOptions {
  /// Adds one pseudo-count per mode to both histograms.
  bool smoothing = false;
};

/// KL(generated || reference) between nearest-mode histograms, in nats.
/// Throws UndefinedKL when a generated mode has no reference samples.
double reverse_kl(const SampleSet& generated, const SampleSet& reference, const ModeSpec& spec,
                  const ReverseKlOptions& options = {});

}  // namespace collapse
