#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace collapse {

/// Raw weights may deviate from unit mass by at most this much; they are
/// then rescaled. Larger deviations are rejected with NotNormalized.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Probability vector over the alphabet {0, ..., size()-1}.
class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(std::vector<double> weights);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;

 private:
  std::vector<double> probs_;
};

/// Target P and generator Q on a shared alphabet.
class DistributionPair {
 public:
  DistributionPair(DiscreteDistribution p, DiscreteDistribution q);

  const DiscreteDistribution& p() const noexcept { return p_; }
  const DiscreteDistribution& q() const noexcept { return q_; }
  std::size_t size() const noexcept { return p_.size(); }

  /// (Q, P): the roles of target and generator exchanged.
  DistributionPair swapped() const { return DistributionPair(q_, p_); }

  friend bool operator==(const DistributionPair&, const DistributionPair&) = default;

 private:
  DiscreteDistribution p_;
  DiscreteDistribution q_;
};

/// A base pair together with the packing degree m >= 1.
struct ProductSpec {
  ProductSpec(DistributionPair base_pair, int degree);

  DistributionPair base;
  int m;
};

DistributionPair make_pair(std::span<const double> p_weights, std::span<const double> q_weights);

double total_variation(const DistributionPair& pair);

/// KL(a || b) in nats. Infinite when a puts mass where b has none.
double kl_divergence(const DiscreteDistribution& a, const DiscreteDistribution& b);

/// Jensen-Shannon divergence in nats; bounded by ln 2.
double js_divergence(const DistributionPair& pair);

inline constexpr std::size_t kDefaultProductCap = 10'000'000;

/// Materializes P^m and Q^m. Outcome (x_1, ..., x_m) sits at index
/// sum_j x_j * k^(m-1-j), i.e. lexicographic with x_1 most significant.
DistributionPair product_pair(const ProductSpec& spec, std::size_t cap = kDefaultProductCap);

/// d_TV(P^m, Q^m) by summing over multinomial count vectors instead of the
/// k^m outcomes. Terms are accumulated in the log domain for m > 30.
double product_tv(const ProductSpec& spec);

/// d_JS(P^m, Q^m) in nats, same enumeration as product_tv.
double product_js(const ProductSpec& spec);

/// Raw-span variants used by the bound optimizers; inputs are trusted to be
/// valid probability vectors of equal length.
double product_tv(std::span<const double> p, std::span<const double> q, int m);
double product_js(std::span<const double> p, std::span<const double> q, int m);

}  // namespace collapse
