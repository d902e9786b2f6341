#include "collapse/sandwich.hpp"

#include <algorithm>
#include <array>

#include "collapse/canonical.hpp"
#include "collapse/error.hpp"
#include "collapse/region.hpp"

namespace collapse {

namespace {

std::vector<double> dirichlet(std::mt19937_64& rng, std::size_t k, double concentration) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> w(k);
  double sum = 0.0;
  while (sum <= 0.0) {
    sum = 0.0;
    for (double& x : w) {
      x = gamma(rng);
      sum += x;
    }
  }
  for (double& x : w) x /= sum;
  return w;
}

void zero_some(std::mt19937_64& rng, std::vector<double>& w) {
  std::bernoulli_distribution drop(0.35);
  std::vector<double> out = w;
  for (double& x : out) {
    if (drop(rng)) x = 0.0;
  }
  double sum = 0.0;
  for (double x : out) sum += x;
  if (sum <= 0.0) return;
  for (double& x : out) x /= sum;
  w = std::move(out);
}

struct Checker {
  const SandwichConfig& config;
  SandwichReport& report;

  void check(std::size_t trial, const DistributionPair& pair, ConstraintKind kind,
             std::optional<CollapsePoint> point) {
    const double tau = total_variation(pair);
    for (int m = 1; m <= config.max_m; ++m) {
      const double value = product_tv(ProductSpec(pair, m));
      TvBounds b;
      switch (kind) {
        case ConstraintKind::none: b = thm1_bounds(tau, m, config.bounds); break;
        case ConstraintKind::has_collapse:
          b = thm2_bounds(point->epsilon, point->delta, tau, m, config.bounds);
          break;
        case ConstraintKind::no_collapse_no_augmentation:
          b = thm3_bounds_checked(*point, tau, m, value);
          break;
      }
      ++report.checks[static_cast<int>(kind)];
      const double upper = b.upper - config.corrupt_upper;
      const bool inside = b.feasible && value >= b.lower - config.slack && value <= upper + config.slack;
      if (!inside) {
        report.violations.push_back({trial, pair, kind, point, m, value, b.lower, upper, b.feasible});
      }
    }
  }

  // thm3 with the 2-D maximization skipped when a grid corner already
  // certifies value <= U. The certificate is a feasible outer pair, so the
  // true maximum is at least its product TV.
  TvBounds thm3_bounds_checked(const CollapsePoint& point, double tau, int m, double value) {
    const double eps = point.epsilon;
    const double delta = point.delta;
    const double gap = delta - eps;
    if (m > 1 && tau >= gap && config.corrupt_upper == 0.0) {
      const bool low_side = delta + eps <= 1.0;
      const double floor = (low_side ? eps : 1.0 - delta) * tau / gap;
      const double ceiling = 1.0 - tau;
      const double limit = low_side ? gap / (delta + eps) : gap / (2.0 - delta - eps);
      if (tau <= limit + 1e-12 && 2.0 * floor <= ceiling) {
        const std::array<std::array<double, 2>, 3> probes{{{floor, floor},
                                                           {floor, ceiling - floor},
                                                           {0.5 * ceiling, 0.5 * ceiling}}};
        for (const auto& ab : probes) {
          const auto pq = low_side ? detail::outer1_masses(eps, delta, ab[0], ab[1], tau)
                                   : detail::outer2_masses(eps, delta, ab[0], ab[1], tau);
          const double candidate = product_tv(pq.p, pq.q, m);
          if (candidate >= value) {
            TvBounds lower_only = lower_bound_only(eps, delta, tau, m, low_side);
            if (!lower_only.feasible) break;
            lower_only.upper = candidate;
            return lower_only;
          }
        }
      }
    }
    return thm3_bounds(eps, delta, tau, m, config.bounds);
  }

  TvBounds lower_bound_only(double eps, double delta, double tau, int m, bool low_side) {
    const double gap = delta - eps;
    const double lo = (low_side ? eps : 1.0 - delta) * tau / gap;
    const double hi = 1.0 - (low_side ? delta : 1.0 - eps) * tau / gap;
    const auto low = minimize_on_interval(
        [&](double a) {
          const std::array<double, 2> p{1.0 - a, a};
          const std::array<double, 2> q{std::max(0.0, 1.0 - a - tau), a + tau};
          return product_tv(p, q, m);
        },
        std::max(0.0, lo), std::min(1.0 - tau, hi), config.bounds.interval);
    TvBounds b;
    if (!low) return b;
    b.feasible = true;
    b.lower = low->value;
    b.lower_alpha = low->argument;
    return b;
  }
};

}  // namespace

DistributionPair random_pair(std::mt19937_64& rng, std::size_t max_support) {
  if (max_support < 1) throw Error(Errc::invalid_argument, "max_support must be >= 1");
  std::uniform_int_distribution<std::size_t> support(1, max_support);
  const std::size_t k = support(rng);
  std::uniform_int_distribution<int> strategy(0, 3);
  std::vector<double> p;
  std::vector<double> q;
  switch (strategy(rng)) {
    case 0:
      p = dirichlet(rng, k, 1.0);
      q = dirichlet(rng, k, 1.0);
      break;
    case 1: {
      p = dirichlet(rng, k, 1.0);
      const auto r = dirichlet(rng, k, 1.0);
      const double lambda = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      q.resize(k);
      for (std::size_t i = 0; i < k; ++i) q[i] = (1.0 - lambda) * p[i] + lambda * r[i];
      break;
    }
    case 2:
      p = dirichlet(rng, k, 1.0);
      q = dirichlet(rng, k, 1.0);
      zero_some(rng, std::bernoulli_distribution(0.5)(rng) ? p : q);
      break;
    default:
      p = dirichlet(rng, k, 0.3);
      q = dirichlet(rng, k, 0.3);
      break;
  }
  return collapse::make_pair(p, q);
}

SandwichReport run_sandwich(const SandwichConfig& config) {
  if (config.trials < 1) throw Error(Errc::invalid_argument, "trials must be >= 1");
  if (config.max_m < 1) throw Error(Errc::invalid_argument, "max_m must be >= 1");
  if (config.max_support < 1) throw Error(Errc::invalid_argument, "max_support must be >= 1");
  SandwichReport report;
  Checker checker{config, report};
  std::mt19937_64 rng(config.seed);
  const std::size_t max_draws = config.only ? 1000 * config.trials : config.trials;

  while (report.trials < config.trials && report.draws < max_draws) {
    const DistributionPair pair = random_pair(rng, config.max_support);
    ++report.draws;
    const ModeCollapseRegion region = region_from_pair(pair);
    std::vector<std::pair<ConstraintKind, CollapsePoint>> qualifying;
    for (const CollapsePoint& point : config.points) {
      if (has_mode_collapse(region, point)) {
        qualifying.emplace_back(ConstraintKind::has_collapse, point);
      } else if (!has_mode_augmentation(region, point)) {
        qualifying.emplace_back(ConstraintKind::no_collapse_no_augmentation, point);
      }
    }
    if (config.only) {
      std::erase_if(qualifying, [&](const auto& entry) { return entry.first != *config.only; });
      if (*config.only != ConstraintKind::none && qualifying.empty()) continue;
    }
    const std::size_t trial = report.trials++;
    if (!config.only || *config.only == ConstraintKind::none) {
      checker.check(trial, pair, ConstraintKind::none, std::nullopt);
    }
    for (const auto& [kind, point] : qualifying) checker.check(trial, pair, kind, point);
  }
  return report;
}

}  // namespace collapse
