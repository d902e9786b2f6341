#include "collapse/ganview.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "collapse/error.hpp"

namespace collapse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxHistogramDim = 3;

// p >= alpha q, written through the ratio so alpha = p/q decides exactly.
// Equivalent to G*(x) >= 1/2.
bool accepts(double p, double q, double alpha) {
  if (alpha == 0.0) return true;
  if (std::isinf(alpha)) return q == 0.0 && p > 0.0;
  if (q == 0.0) return true;
  return p / q >= alpha;
}

void require_alpha(double alpha) {
  if (!(alpha >= 0.0)) {
    std::ostringstream os;
    os << "alpha = " << alpha << " must be >= 0";
    throw Error(Errc::invalid_argument, os.str());
  }
}

ModeCollapseRegion hull_of(const std::vector<ThresholdPoint>& points) {
  std::vector<Vertex> vertices;
  vertices.reserve(points.size());
  for (const auto& pt : points) vertices.push_back({pt.q_mass, pt.p_mass});
  return upper_hull(vertices);
}

// Per-cell smoothed density ratio learned from the training halves.
class HistogramClassifier {
 public:
  HistogramClassifier(const SampleSet& train_p, const SampleSet& train_q, std::size_t bins, double smoothing)
      : dim_(train_p.dim()), bins_(bins), lo_(dim_, kInf), width_(dim_, 0.0) {
    std::vector<double> hi(dim_, -kInf);
    for (const SampleSet* set : {&train_p, &train_q}) {
      for (std::size_t i = 0; i < set->size(); ++i) {
        const auto x = set->point(i);
        for (std::size_t d = 0; d < dim_; ++d) {
          lo_[d] = std::min(lo_[d], x[d]);
          hi[d] = std::max(hi[d], x[d]);
        }
      }
    }
    std::size_t cells = 1;
    for (std::size_t d = 0; d < dim_; ++d) {
      if (!(hi[d] > lo_[d])) {
        lo_[d] -= 0.5;
        hi[d] += 0.5;
      }
      width_[d] = (hi[d] - lo_[d]) / static_cast<double>(bins_);
      cells *= bins_;
    }
    std::vector<double> count_p(cells, smoothing);
    std::vector<double> count_q(cells, smoothing);
    for (std::size_t i = 0; i < train_p.size(); ++i) count_p[cell(train_p.point(i))] += 1.0;
    for (std::size_t i = 0; i < train_q.size(); ++i) count_q[cell(train_q.point(i))] += 1.0;
    const double total_p = static_cast<double>(train_p.size()) + smoothing * static_cast<double>(cells);
    const double total_q = static_cast<double>(train_q.size()) + smoothing * static_cast<double>(cells);
    p_hat_.resize(cells);
    q_hat_.resize(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      p_hat_[c] = total_p > 0.0 ? count_p[c] / total_p : 0.0;
      q_hat_[c] = total_q > 0.0 ? count_q[c] / total_q : 0.0;
    }
  }

  std::size_t cell(std::span<const double> x) const {
    std::size_t index = 0;
    for (std::size_t d = 0; d < dim_; ++d) {
      const double t = std::floor((x[d] - lo_[d]) / width_[d]);
      const auto b = static_cast<std::size_t>(std::clamp(t, 0.0, static_cast<double>(bins_ - 1)));
      index = index * bins_ + b;
    }
    return index;
  }

  bool accepts_cell(std::size_t c, double alpha) const { return accepts(p_hat_[c], q_hat_[c], alpha); }

 private:
  std::size_t dim_;
  std::size_t bins_;
  std::vector<double> lo_;
  std::vector<double> width_;
  std::vector<double> p_hat_;
  std::vector<double> q_hat_;
};

std::size_t symbol_of(std::span<const double> x, std::size_t alphabet) {
  const double v = x[0];
  if (!(v >= 0.0) || v != std::floor(v) || v >= static_cast<double>(alphabet)) {
    std::ostringstream os;
    os << "sample value " << v << " is not a symbol index below " << alphabet;
    throw Error(Errc::invalid_argument, os.str());
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

AlphaSchedule::AlphaSchedule(std::vector<double> alphas) : alphas_(std::move(alphas)) {
  for (std::size_t i = 0; i < alphas_.size(); ++i) {
    const double a = alphas_[i];
    if (!(a > 0.0) || std::isinf(a)) {
      std::ostringstream os;
      os << "alpha schedule entry " << a << " must be finite and > 0";
      throw Error(Errc::invalid_argument, os.str());
    }
    if (i > 0 && !(a > alphas_[i - 1])) throw Error(Errc::invalid_argument, "alpha schedule must be strictly increasing");
  }
}

AlphaSchedule AlphaSchedule::log_spaced(std::size_t count, double lo, double hi) {
  if (count < 1 || !(lo > 0.0) || !(hi >= lo)) throw Error(Errc::invalid_argument, "invalid log-spaced alpha range");
  if (count == 1) return AlphaSchedule({lo});
  std::vector<double> alphas(count);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i) {
    alphas[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return AlphaSchedule(std::move(alphas));
}

AlphaSchedule AlphaSchedule::covering(const DistributionPair& pair, const AlphaSchedule& base) {
  std::vector<double> alphas = base.alphas_;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const double p = pair.p()[i];
    const double q = pair.q()[i];
    if (p > 0.0 && q > 0.0) alphas.push_back(p / q);
  }
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  return AlphaSchedule(std::move(alphas));
}

std::vector<double> AlphaSchedule::with_endpoints() const {
  std::vector<double> all;
  all.reserve(alphas_.size() + 2);
  all.push_back(0.0);
  all.insert(all.end(), alphas_.begin(), alphas_.end());
  all.push_back(kInf);
  return all;
}

ClassifierBackend ClassifierBackend::exact(DistributionPair pair) {
  ClassifierBackend b;
  b.kind = BackendKind::exact_ratio;
  b.bins = 0;
  b.smoothing = 0.0;
  b.pair = std::move(pair);
  return b;
}

ClassifierBackend ClassifierBackend::histogram(std::size_t bins, double smoothing) {
  if (bins < 2) throw Error(Errc::invalid_argument, "histogram backend needs bins >= 2");
  if (!(smoothing >= 0.0)) throw Error(Errc::invalid_argument, "histogram smoothing must be >= 0");
  ClassifierBackend b;
  b.kind = BackendKind::histogram;
  b.bins = bins;
  b.smoothing = smoothing;
  return b;
}

double optimal_classifier_value(double p_density, double q_density, double alpha) {
  if (!(p_density >= 0.0) || !(q_density >= 0.0)) throw Error(Errc::invalid_argument, "densities must be >= 0");
  require_alpha(alpha);
  if (p_density == 0.0 && q_density == 0.0) throw Error(Errc::degenerate_input, "p = q = 0 leaves G* undefined");
  if (q_density == 0.0) return 1.0;
  if (std::isinf(alpha)) return 0.0;
  const double denom = p_density + alpha * q_density;
  if (denom == 0.0) throw Error(Errc::degenerate_input, "p + alpha q = 0 leaves G* undefined");
  return p_density / denom;
}

SetMasses s_alpha_masses(const DistributionPair& pair, double alpha) {
  require_alpha(alpha);
  SetMasses m;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const double p = pair.p()[i];
    const double q = pair.q()[i];
    if (accepts(p, q, alpha)) {
      m.p_mass += p;
      m.q_mass += q;
    }
  }
  return m;
}

RegionEstimate ganview_estimate(const SampleSet& samples_p, const SampleSet& samples_q, const AlphaSchedule& schedule,
                                const ClassifierBackend& backend) {
  if (samples_p.dim() != samples_q.dim()) {
    std::ostringstream os;
    os << "P samples have dimension " << samples_p.dim() << " but Q samples have " << samples_q.dim();
    throw Error(Errc::dimension_mismatch, os.str());
  }
  if (samples_p.size() < 4 || samples_q.size() < 4) {
    std::ostringstream os;
    os << "need >= 4 samples of each distribution, got " << samples_p.size() << " and " << samples_q.size();
    throw Error(Errc::too_few_samples, os.str());
  }
  const std::size_t half_p = samples_p.size() / 2;
  const std::size_t half_q = samples_q.size() / 2;
  const SampleSet test_p = samples_p.slice(half_p, samples_p.size());
  const SampleSet test_q = samples_q.slice(half_q, samples_q.size());

  // Each test sample reduces to a key whose decision depends only on alpha.
  std::vector<std::size_t> keys_p(test_p.size());
  std::vector<std::size_t> keys_q(test_q.size());
  std::function<bool(std::size_t, double)> decide;
  std::optional<HistogramClassifier> histogram;

  if (backend.kind == BackendKind::exact_ratio) {
    if (!backend.pair) throw Error(Errc::invalid_argument, "exact_ratio backend needs the known pair");
    if (samples_p.dim() != 1) throw Error(Errc::dimension_mismatch, "exact_ratio backend takes 1-D symbol samples");
    const DistributionPair& pair = *backend.pair;
    for (std::size_t i = 0; i < test_p.size(); ++i) keys_p[i] = symbol_of(test_p.point(i), pair.size());
    for (std::size_t i = 0; i < test_q.size(); ++i) keys_q[i] = symbol_of(test_q.point(i), pair.size());
    decide = [&pair](std::size_t s, double alpha) { return accepts(pair.p()[s], pair.q()[s], alpha); };
  } else {
    if (backend.bins < 2) throw Error(Errc::invalid_argument, "histogram backend needs bins >= 2");
    if (samples_p.dim() > kMaxHistogramDim) {
      throw Error(Errc::dimension_mismatch, "histogram backend supports at most 3 dimensions");
    }
    histogram.emplace(samples_p.slice(0, half_p), samples_q.slice(0, half_q), backend.bins, backend.smoothing);
    for (std::size_t i = 0; i < test_p.size(); ++i) keys_p[i] = histogram->cell(test_p.point(i));
    for (std::size_t i = 0; i < test_q.size(); ++i) keys_q[i] = histogram->cell(test_q.point(i));
    decide = [&histogram](std::size_t c, double alpha) { return histogram->accepts_cell(c, alpha); };
  }

  RegionEstimate estimate{{}, ModeCollapseRegion::diagonal()};
  for (const double alpha : schedule.with_endpoints()) {
    std::size_t hits_p = 0;
    std::size_t hits_q = 0;
    for (const std::size_t k : keys_p) hits_p += decide(k, alpha) ? 1 : 0;
    for (const std::size_t k : keys_q) hits_q += decide(k, alpha) ? 1 : 0;
    estimate.points.push_back({alpha, static_cast<double>(hits_p) / static_cast<double>(keys_p.size()),
                               static_cast<double>(hits_q) / static_cast<double>(keys_q.size())});
  }
  estimate.hull = hull_of(estimate.points);
  return estimate;
}

RegionEstimate ganview_estimate(const DistributionPair& pair, const AlphaSchedule& schedule) {
  RegionEstimate estimate{{}, ModeCollapseRegion::diagonal()};
  for (const double alpha : schedule.with_endpoints()) {
    const SetMasses m = s_alpha_masses(pair, alpha);
    estimate.points.push_back({alpha, m.p_mass, m.q_mass});
  }
  estimate.hull = hull_of(estimate.points);
  return estimate;
}

}  // namespace collapse
