#pragma once

// Brute-force reference computations. Nothing here calls into the library's
// enumeration, hull or optimizer code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

inline double sum(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

/// Product vector with x_1 as the most significant index.
inline Vec materialize(const Vec& base, int m) {
  Vec out{1.0};
  for (int j = 0; j < m; ++j) {
    Vec next;
    next.reserve(out.size() * base.size());
    for (double a : out) {
      for (double b : base) next.push_back(a * b);
    }
    out = std::move(next);
  }
  return out;
}

inline double half_l1(const Vec& p, const Vec& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

/// sup_S P(S) - Q(S) over all 2^k subsets.
inline double tv_sup(const Vec& p, const Vec& q) {
  const std::size_t k = p.size();
  double best = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    double d = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) d += p[i] - q[i];
    }
    best = std::max(best, d);
  }
  return best;
}

inline double product_tv(const Vec& p, const Vec& q, int m) { return half_l1(materialize(p, m), materialize(q, m)); }

/// KL(a || b) in nats straight from the definition.
inline double kl(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 0.0) s += a[i] * std::log(a[i] / b[i]);
  }
  return s;
}

inline double js(const Vec& p, const Vec& q) {
  Vec mid(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) mid[i] = 0.5 * (p[i] + q[i]);
  return 0.5 * kl(p, mid) + 0.5 * kl(q, mid);
}

inline double product_js(const Vec& p, const Vec& q, int m) { return js(materialize(p, m), materialize(q, m)); }

/// Binary-alphabet product TV through the binomial sum in long double.
inline double binary_product_tv(double p1, double q1, int m) {
  long double s = 0.0L;
  for (int j = 0; j <= m; ++j) {
    const long double c = std::exp(std::lgamma(m + 1.0L) - std::lgamma(j + 1.0L) - std::lgamma(m - j + 1.0L));
    const long double a = std::pow(static_cast<long double>(p1), j) * std::pow(1.0L - p1, m - j);
    const long double b = std::pow(static_cast<long double>(q1), j) * std::pow(1.0L - q1, m - j);
    s += c * std::fabs(a - b);
  }
  return static_cast<double>(0.5L * s);
}

/// (Q(S), P(S)) for every subset S.
inline std::vector<std::pair<double, double>> subset_points(const Vec& p, const Vec& q) {
  std::vector<std::pair<double, double>> pts;
  const std::size_t k = p.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    double ps = 0.0;
    double qs = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) {
        ps += p[i];
        qs += q[i];
      }
    }
    pts.emplace_back(qs, ps);
  }
  return pts;
}

/// Highest delta at eps reachable by a subset or a mixture of two subsets.
inline double boundary_at(const std::vector<std::pair<double, double>>& pts, double eps) {
  double best = -1.0;
  for (const auto& a : pts) {
    if (a.first <= eps) best = std::max(best, a.second);
    for (const auto& b : pts) {
      if (a.first < eps && b.first > eps) {
        const double t = (eps - a.first) / (b.first - a.first);
        best = std::max(best, a.second + t * (b.second - a.second));
      }
    }
  }
  return best;
}

/// Minimum of f over n + 1 equally spaced points of [lo, hi].
inline std::pair<double, double> grid_min(const std::function<double(double)>& f, double lo, double hi, int n) {
  double best_x = lo;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double v = f(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  return {best_x, best};
}

/// Nested grids: n + 1 points, then n + 1 points across the two cells around
/// the best point, `levels` times. Resolves kinked minima to ~(hi-lo)/n^levels.
inline std::pair<double, double> nested_grid_min(const std::function<double(double)>& f, double lo, double hi, int n,
                                                 int levels = 3) {
  auto best = grid_min(f, lo, hi, n);
  for (int level = 1; level < levels; ++level) {
    const double h = (hi - lo) / n;
    lo = std::max(lo, best.first - h);
    hi = std::min(hi, best.first + h);
    const auto next = grid_min(f, lo, hi, n);
    if (next.second <= best.second) best = next;
  }
  return best;
}

/// Maximum of f over the grid of {a, b >= floor, a + b <= ceiling} with n steps per side.
inline double triangle_grid_max(const std::function<double(double, double)>& f, double floor, double ceiling, int n) {
  const double span = ceiling - 2.0 * floor;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) best = std::max(best, f(floor + span * i / n, floor + span * j / n));
  }
  return best;
}

inline Vec random_simplex(std::mt19937_64& rng, std::size_t k) {
  std::exponential_distribution<double> e(1.0);
  Vec v(k);
  for (double& x : v) x = e(rng);
  const double s = sum(v);
  for (double& x : v) x /= s;
  return v;
}

/// Apply a row-stochastic kernel: out[j] = sum_i v[i] K[i][j].
inline Vec push_through(const Vec& v, const std::vector<Vec>& kernel) {
  Vec out(kernel.front().size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += v[i] * kernel[i][j];
  }
  return out;
}

}  // namespace oracle
