#include "collapse/metrics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "collapse/error.hpp"

namespace collapse {

namespace {

void require_planar(const SampleSet& samples, const char* what) {
  if (samples.dim() != 2) {
    std::ostringstream os;
    os << what << " samples have dimension " << samples.dim() << ", expected 2";
    throw Error(Errc::dimension_mismatch, os.str());
  }
  if (samples.empty()) {
    std::ostringstream os;
    os << what << " sample set is empty";
    throw Error(Errc::too_few_samples, os.str());
  }
}

double squared_distance(const std::array<double, 2>& c, double x, double y) {
  const double dx = x - c[0];
  const double dy = y - c[1];
  return dx * dx + dy * dy;
}

bool within_quality(const ModeSpec& spec, std::size_t mode, double x, double y) {
  return std::sqrt(squared_distance(spec.centers[mode], x, y)) <= spec.quality_radius();
}

std::vector<double> mode_histogram(const SampleSet& samples, const ModeSpec& spec, double pseudo_count) {
  std::vector<double> counts(spec.centers.size(), pseudo_count);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto pt = samples.point(i);
    counts[nearest_mode(spec, pt[0], pt[1])] += 1.0;
  }
  double total = 0.0;
  for (double c : counts) total += c;
  for (double& c : counts) c /= total;
  return counts;
}

}  // namespace

ModeSpec::ModeSpec(std::vector<std::array<double, 2>> mode_centers, double mode_std, double quality_multiplier)
    : centers(std::move(mode_centers)), stddev(mode_std), quality_x(quality_multiplier) {
  if (centers.empty()) throw Error(Errc::invalid_argument, "mode spec needs at least one center");
  if (!(stddev > 0.0) || std::isinf(stddev)) throw Error(Errc::invalid_argument, "mode std must be finite and > 0");
  if (!(quality_x > 0.0) || std::isinf(quality_x)) throw Error(Errc::invalid_argument, "quality_x must be finite and > 0");
}

ModeSpec ring_spec() {
  std::vector<std::array<double, 2>> centers;
  for (int i = 1; i <= 8; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / 8.0;
    centers.push_back({std::cos(angle), std::sin(angle)});
  }
  return ModeSpec(std::move(centers), 0.01, 3.0);
}

ModeSpec grid_spec() {
  std::vector<std::array<double, 2>> centers;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) centers.push_back({-4.0 + 2.0 * i, -4.0 + 2.0 * j});
  }
  return ModeSpec(std::move(centers), 0.05, 3.0);
}

SampleSet sample_mixture(const ModeSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw Error(Errc::invalid_argument, "sample count n must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> mode(0, spec.centers.size() - 1);
  std::normal_distribution<double> noise(0.0, spec.stddev);
  std::vector<double> coords;
  coords.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = spec.centers[mode(rng)];
    const double x = c[0] + noise(rng);
    const double y = c[1] + noise(rng);
    coords.push_back(x);
    coords.push_back(y);
  }
  return SampleSet(2, std::move(coords));
}

std::size_t nearest_mode(const ModeSpec& spec, double x, double y) {
  std::size_t best = 0;
  double best_d = squared_distance(spec.centers[0], x, y);
  for (std::size_t k = 1; k < spec.centers.size(); ++k) {
    const double d = squared_distance(spec.centers[k], x, y);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

double high_quality_fraction(const SampleSet& samples, const ModeSpec& spec) {
  require_planar(samples, "evaluated");
  std::size_t good = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto pt = samples.point(i);
    if (within_quality(spec, nearest_mode(spec, pt[0], pt[1]), pt[0], pt[1])) ++good;
  }
  return static_cast<double>(good) / static_cast<double>(samples.size());
}

std::size_t count_modes(const SampleSet& samples, const ModeSpec& spec) {
  if (samples.dim() != 2) {
    std::ostringstream os;
    os << "evaluated samples have dimension " << samples.dim() << ", expected 2";
    throw Error(Errc::dimension_mismatch, os.str());
  }
  std::vector<bool> hit(spec.centers.size(), false);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto pt = samples.point(i);
    const std::size_t k = nearest_mode(spec, pt[0], pt[1]);
    if (within_quality(spec, k, pt[0], pt[1])) hit[k] = true;
  }
  std::size_t n = 0;
  for (bool h : hit) n += h ? 1 : 0;
  return n;
}

double reverse_kl(const SampleSet& generated, const SampleSet& reference, const ModeSpec& spec,
                  const ReverseKlOptions& options) {
  require_planar(generated, "generated");
  require_planar(reference, "reference");
  const double pseudo = options.smoothing ? 1.0 : 0.0;
  const auto g = mode_histogram(generated, spec, pseudo);
  const auto r = mode_histogram(reference, spec, pseudo);
  double kl = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g[k] == 0.0) continue;
    if (r[k] == 0.0) {
      std::ostringstream os;
      os << "mode " << k << " has generated mass " << g[k] << " but no reference samples";
      throw Error(Errc::undefined_kl, os.str());
    }
    kl += g[k] * std::log(g[k] / r[k]);
  }
  return std::max(0.0, kl);
}

}  // namespace collapse
