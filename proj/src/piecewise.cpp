#include "collapse/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "collapse/error.hpp"

namespace collapse {

namespace {

constexpr double kRatioTolerance = 1e-12;

void validate(const std::vector<double>& breaks, const std::vector<double>& density, const char* name) {
  if (breaks.size() < 2) throw Error(Errc::invalid_argument, "need at least two breaks");
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    if (!(breaks[i] > breaks[i - 1])) throw Error(Errc::invalid_argument, "breaks must be strictly increasing");
  }
  if (density.size() + 1 != breaks.size()) {
    std::ostringstream os;
    os << name << " has " << density.size() << " pieces for " << breaks.size() - 1 << " intervals";
    throw Error(Errc::length_mismatch, os.str());
  }
  for (double d : density) {
    if (!(d >= 0.0) || std::isinf(d)) {
      std::ostringstream os;
      os << name << " has invalid density " << d;
      throw Error(Errc::negative_mass, os.str());
    }
  }
}

bool same_ratio(double p1, double q1, double p2, double q2) {
  // Cross-multiplied so q = 0 pieces group together.
  const double scale = std::max({p1 * q2, p2 * q1, 1e-300});
  return std::abs(p1 * q2 - p2 * q1) <= kRatioTolerance * scale;
}

}  // namespace

PiecewiseReduction reduce_piecewise(const PiecewiseUniformPair& densities) {
  validate(densities.breaks, densities.p_density, "p_density");
  validate(densities.breaks, densities.q_density, "q_density");
  std::vector<double> p;
  std::vector<double> q;
  double p_mass = 0.0;
  double q_mass = 0.0;
  for (std::size_t i = 0; i + 1 < densities.breaks.size(); ++i) {
    const double width = densities.breaks[i + 1] - densities.breaks[i];
    const double pi = densities.p_density[i] * width;
    const double qi = densities.q_density[i] * width;
    p_mass += pi;
    q_mass += qi;
    if (pi == 0.0 && qi == 0.0) continue;
    std::size_t k = 0;
    while (k < p.size() && !same_ratio(p[k], q[k], pi, qi)) ++k;
    if (k == p.size()) {
      p.push_back(pi);
      q.push_back(qi);
    } else {
      p[k] += pi;
      q[k] += qi;
    }
  }
  if (!(p_mass > 0.0) || !(q_mass > 0.0)) throw Error(Errc::empty_distribution, "densities integrate to zero");
  for (double& x : p) x /= p_mass;
  for (double& x : q) x /= q_mass;
  return {collapse::make_pair(p, q), p_mass, q_mass};
}

SampleSet sample_piecewise(const std::vector<double>& breaks, const std::vector<double>& density, std::size_t n,
                           std::uint64_t seed) {
  validate(breaks, density, "density");
  if (n < 1) throw Error(Errc::invalid_argument, "sample count n must be >= 1");
  std::vector<double> weights(density.size());
  for (std::size_t i = 0; i < density.size(); ++i) weights[i] = density[i] * (breaks[i + 1] - breaks[i]);
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw Error(Errc::empty_distribution, "density integrates to zero");
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> piece(weights.begin(), weights.end());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> coords(n);
  for (double& x : coords) {
    const std::size_t i = piece(rng);
    x = breaks[i] + unit(rng) * (breaks[i + 1] - breaks[i]);
  }
  return SampleSet(1, std::move(coords));
}

}  // namespace collapse
