#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "collapse/distribution.hpp"
#include "collapse/region.hpp"
#include "collapse/samples.hpp"

namespace collapse {

/// Likelihood-ratio thresholds; 0 and +inf are always evaluated in addition.
class AlphaSchedule {
 public:
  /// Requires finite, strictly increasing, positive values.
  explicit AlphaSchedule(std::vector<double> alphas);

  /// 41 log-spaced values in [1e-3, 1e3].
  static AlphaSchedule log_spaced(std::size_t count = 41, double lo = 1e-3, double hi = 1e3);
  /// `base` merged with every finite positive ratio p_i / q_i of the pair.
  static AlphaSchedule covering(const DistributionPair& pair, const AlphaSchedule& base = log_spaced());

  const std::vector<double>& alphas() const noexcept { return alphas_; }
  /// 0, the finite alphas, then +inf.
  std::vector<double> with_endpoints() const;

 private:
  std::vector<double> alphas_;
};

enum class BackendKind { exact_ratio, histogram };

struct ClassifierBackend {
  static ClassifierBackend exact(DistributionPair pair);
  static ClassifierBackend histogram(std::size_t bins, double smoothing = 0.5);

  BackendKind kind = BackendKind::histogram;
  /// Bins per dimension over the training range.
  std::size_t bins = 50;
  /// Pseudo-count added to every bin of both histograms.
  double smoothing = 0.5;
  /// exact_ratio only: samples are symbol indices of this pair.
  std::optional<DistributionPair> pair;
};

struct ThresholdPoint {
  double alpha = 0.0;
  double p_mass = 0.0;
  double q_mass = 0.0;
};

struct RegionEstimate {
  std::vector<ThresholdPoint> points;
  ModeCollapseRegion hull;
};

/// G*(x) = p / (p + alpha q), the weighted-loss optimal classifier.
double optimal_classifier_value(double p_density, double q_density, double alpha);

struct SetMasses {
  double p_mass = 0.0;
  double q_mass = 0.0;
};

/// (P(S), Q(S)) for S = {i : p_i >= alpha q_i}; alpha = +inf keeps the q = 0 atoms.
SetMasses s_alpha_masses(const DistributionPair& pair, double alpha);

/// Trains the classifier on the first half of each sample set, estimates
/// (P(S_alpha), Q(S_alpha)) on the second halves and hulls the points.
RegionEstimate ganview_estimate(const SampleSet& samples_p, const SampleSet& samples_q, const AlphaSchedule& schedule,
                                const ClassifierBackend& backend);

/// Population version: exact masses of S_alpha for a known pair.
RegionEstimate ganview_estimate(const DistributionPair& pair, const AlphaSchedule& schedule);

}  // namespace collapse
