#pragma once

#include <optional>
#include <random>
#include <vector>

#include "collapse/distribution.hpp"
#include "collapse/error.hpp"
#include "oracle.hpp"

namespace support {

/// Error code thrown by f, or nullopt when it returns normally.
template <class F>
std::optional<collapse::Errc> error_of(F&& f) {
  try {
    f();
  } catch (const collapse::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::vector<double> to_vec(const collapse::DiscreteDistribution& d) {
  return {d.probs().begin(), d.probs().end()};
}

/// Random pair on k atoms; roughly a third of the draws zero some atoms.
inline collapse::DistributionPair random_pair(std::mt19937_64& rng, std::size_t k) {
  auto p = oracle::random_simplex(rng, k);
  auto q = oracle::random_simplex(rng, k);
  std::uniform_int_distribution<int> pick(0, 2);
  if (pick(rng) == 0 && k > 1) {
    std::uniform_int_distribution<std::size_t> atom(0, k - 1);
    auto& target = pick(rng) == 0 ? p : q;
    const std::size_t i = atom(rng);
    const double removed = target[i];
    target[i] = 0.0;
    for (double& x : target) x /= 1.0 - removed;
  }
  return collapse::make_pair(p, q);
}

}  // namespace support
