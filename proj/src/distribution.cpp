#include "collapse/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "collapse/error.hpp"

namespace collapse {

DiscreteDistribution::DiscreteDistribution(std::vector<double> weights) : probs_(std::move(weights)) {
  if (probs_.empty()) {
    throw Error(Errc::empty_distribution, "alphabet size must be at least 1");
  }
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!std::isfinite(probs_[i]) || probs_[i] < 0.0) {
      std::ostringstream os;
      os << "entry " << i << " is " << probs_[i];
      throw Error(Errc::negative_mass, os.str());
    }
  }
  const double sum = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "weights sum to " << sum;
    throw Error(Errc::not_normalized, os.str());
  }
  if (sum != 1.0) {
    for (double& w : probs_) w /= sum;
  }
}

DistributionPair::DistributionPair(DiscreteDistribution p, DiscreteDistribution q)
    : p_(std::move(p)), q_(std::move(q)) {
  if (p_.size() != q_.size()) {
    std::ostringstream os;
    os << "p has " << p_.size() << " atoms, q has " << q_.size();
    throw Error(Errc::length_mismatch, os.str());
  }
}

ProductSpec::ProductSpec(DistributionPair base_pair, int degree) : base(std::move(base_pair)), m(degree) {
  if (m < 1) throw Error(Errc::invalid_argument, "packing degree m must be >= 1");
}

DistributionPair make_pair(std::span<const double> p_weights, std::span<const double> q_weights) {
  if (p_weights.size() != q_weights.size()) {
    std::ostringstream os;
    os << "p has " << p_weights.size() << " weights, q has " << q_weights.size();
    throw Error(Errc::length_mismatch, os.str());
  }
  return DistributionPair(DiscreteDistribution({p_weights.begin(), p_weights.end()}),
                          DiscreteDistribution({q_weights.begin(), q_weights.end()}));
}

double total_variation(const DistributionPair& pair) {
  double acc = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) acc += std::abs(pair.p()[i] - pair.q()[i]);
  return std::min(1.0, 0.5 * acc);
}

double kl_divergence(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  if (a.size() != b.size()) throw Error(Errc::length_mismatch, "kl_divergence operands differ in size");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    if (b[i] == 0.0) return std::numeric_limits<double>::infinity();
    acc += a[i] * std::log(a[i] / b[i]);
  }
  return std::max(0.0, acc);
}

namespace {

// 1/2 a ln(2a/(a+b)) + 1/2 b ln(2b/(a+b)); scale-free in (a, b).
double js_term(double a, double b) {
  const double s = a + b;
  if (s <= 0.0) return 0.0;
  double t = 0.0;
  if (a > 0.0) t += a * std::log(2.0 * a / s);
  if (b > 0.0) t += b * std::log(2.0 * b / s);
  return 0.5 * t;
}

constexpr int kLogDomainThreshold = 30;
constexpr double kMaxCountVectors = 2e8;

// Walks every count vector (c_0, ..., c_{k-1}) with sum m and hands the
// multinomially weighted masses (coef * prod p^c, coef * prod q^c) to visit.
template <class Visit>
class CountVectorWalk {
 public:
  CountVectorWalk(std::span<const double> p, std::span<const double> q, int m, Visit& visit)
      : m_(m), visit_(visit) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0.0 && q[i] == 0.0) continue;
      p_.push_back(p[i]);
      q_.push_back(q[i]);
    }
    k_ = p_.size();
    if (k_ > 1) {
      // C(m + k - 1, k - 1) count vectors.
      const double count =
          std::exp(std::lgamma(m + k_) - std::lgamma(m + 1.0) - std::lgamma(static_cast<double>(k_)));
      if (count > kMaxCountVectors) {
        std::ostringstream os;
        os << "about " << count << " count vectors for k=" << k_ << ", m=" << m;
        throw Error(Errc::product_too_large, os.str());
      }
    }
    log_domain_ = m > kLogDomainThreshold;
    const auto width = static_cast<std::size_t>(m + 1);
    binom_.assign(width * width, 0.0);
    for (int n = 0; n <= m; ++n) {
      for (int c = 0; c <= n; ++c) {
        if (log_domain_) {
          binom_[idx(n, c)] = std::lgamma(n + 1.0) - std::lgamma(c + 1.0) - std::lgamma(n - c + 1.0);
        } else {
          binom_[idx(n, c)] = (c == 0 || c == n) ? 1.0 : binom_[idx(n - 1, c - 1)] + binom_[idx(n - 1, c)];
        }
      }
    }
    ppow_.assign(k_ * width, 0.0);
    qpow_.assign(k_ * width, 0.0);
    for (std::size_t j = 0; j < k_; ++j) {
      for (int c = 0; c <= m; ++c) {
        ppow_[j * width + c] = power(p_[j], c);
        qpow_[j * width + c] = power(q_[j], c);
      }
    }
  }

  void run() {
    if (k_ == 0) return;
    if (log_domain_) {
      walk_log(0, m_, 0.0, 0.0, 0.0);
    } else {
      walk(0, m_, 1.0, 1.0, 1.0);
    }
  }

 private:
  std::size_t idx(int n, int c) const { return static_cast<std::size_t>(n) * (m_ + 1) + c; }

  double power(double base, int c) const {
    if (c == 0) return log_domain_ ? 0.0 : 1.0;
    if (log_domain_) return base == 0.0 ? -std::numeric_limits<double>::infinity() : c * std::log(base);
    double r = 1.0;
    for (int i = 0; i < c; ++i) r *= base;
    return r;
  }

  void walk(std::size_t j, int remaining, double coef, double pp, double qq) {
    const std::size_t width = static_cast<std::size_t>(m_ + 1);
    if (j + 1 == k_) {
      const double wp = pp * ppow_[j * width + remaining];
      const double wq = qq * qpow_[j * width + remaining];
      visit_(coef * wp, coef * wq);
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      const double np = pp * ppow_[j * width + c];
      const double nq = qq * qpow_[j * width + c];
      if (np == 0.0 && nq == 0.0) continue;
      walk(j + 1, remaining - c, coef * binom_[idx(remaining, c)], np, nq);
    }
  }

  void walk_log(std::size_t j, int remaining, double lcoef, double lp, double lq) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    const std::size_t width = static_cast<std::size_t>(m_ + 1);
    if (j + 1 == k_) {
      const double a = lp + ppow_[j * width + remaining];
      const double b = lq + qpow_[j * width + remaining];
      visit_(a == kNegInf ? 0.0 : std::exp(lcoef + a), b == kNegInf ? 0.0 : std::exp(lcoef + b));
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      const double a = lp + ppow_[j * width + c];
      const double b = lq + qpow_[j * width + c];
      if (a == kNegInf && b == kNegInf) continue;
      walk_log(j + 1, remaining - c, lcoef + binom_[idx(remaining, c)], a, b);
    }
  }

  int m_;
  Visit& visit_;
  std::vector<double> p_;
  std::vector<double> q_;
  std::size_t k_ = 0;
  bool log_domain_ = false;
  std::vector<double> binom_;
  std::vector<double> ppow_;
  std::vector<double> qpow_;
};

template <class Visit>
void for_each_count_vector(std::span<const double> p, std::span<const double> q, int m, Visit& visit) {
  CountVectorWalk<Visit> walk(p, q, m, visit);
  walk.run();
}

}  // namespace

double product_tv(std::span<const double> p, std::span<const double> q, int m) {
  double acc = 0.0;
  auto visit = [&acc](double a, double b) { acc += std::abs(a - b); };
  for_each_count_vector(p, q, m, visit);
  return std::clamp(0.5 * acc, 0.0, 1.0);
}

double product_js(std::span<const double> p, std::span<const double> q, int m) {
  double acc = 0.0;
  auto visit = [&acc](double a, double b) { acc += js_term(a, b); };
  for_each_count_vector(p, q, m, visit);
  return std::clamp(acc, 0.0, std::log(2.0));
}

double product_tv(const ProductSpec& spec) {
  if (spec.m == 1) return total_variation(spec.base);
  return product_tv(spec.base.p().probs(), spec.base.q().probs(), spec.m);
}

double product_js(const ProductSpec& spec) {
  if (spec.m == 1) return js_divergence(spec.base);
  return product_js(spec.base.p().probs(), spec.base.q().probs(), spec.m);
}

double js_divergence(const DistributionPair& pair) {
  double acc = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) acc += js_term(pair.p()[i], pair.q()[i]);
  return std::clamp(acc, 0.0, std::log(2.0));
}

DistributionPair product_pair(const ProductSpec& spec, std::size_t cap) {
  const std::size_t k = spec.base.size();
  std::size_t total = 1;
  for (int j = 0; j < spec.m; ++j) {
    if (total > cap / k) {
      std::ostringstream os;
      os << k << "^" << spec.m << " outcomes exceed the cap of " << cap;
      throw Error(Errc::product_too_large, os.str());
    }
    total *= k;
  }
  std::vector<double> p(total, 1.0);
  std::vector<double> q(total, 1.0);
  for (std::size_t index = 0; index < total; ++index) {
    std::size_t rest = index;
    // Least significant digit is the last coordinate.
    for (int j = 0; j < spec.m; ++j) {
      const std::size_t symbol = rest % k;
      rest /= k;
      p[index] *= spec.base.p()[symbol];
      q[index] *= spec.base.q()[symbol];
    }
  }
  return DistributionPair(DiscreteDistribution(std::move(p)), DiscreteDistribution(std::move(q)));
}

}  // namespace collapse
