#include "collapse/bounds.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "collapse/canonical.hpp"
#include "collapse/distribution.hpp"
#include "collapse/error.hpp"

namespace collapse {

namespace {

constexpr double kFeasibilitySlack = 1e-12;

void require_tau(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    std::ostringstream os;
    os << "tau = " << tau << " is outside [0, 1]";
    throw Error(Errc::invalid_argument, os.str());
  }
}

void require_m(int m) {
  if (m < 1) throw Error(Errc::invalid_argument, "packing degree m must be >= 1");
}

void require_point(double eps, double delta) { (void)CollapsePoint(eps, delta); }

double outer_tv(double tau, int m) {
  if (tau >= 1.0) return 1.0;
  return -std::expm1(static_cast<double>(m) * std::log1p(-tau));
}

double inner_objective(double alpha, double tau, int m) {
  const std::array<double, 2> p{1.0 - alpha, alpha};
  const std::array<double, 2> q{std::max(0.0, 1.0 - alpha - tau), alpha + tau};
  return product_tv(p, q, m);
}

double inner1_objective(double eps, double delta, double alpha, double tau, int m) {
  const std::array<double, 3> p{delta, std::max(0.0, 1.0 - alpha - delta), alpha};
  const std::array<double, 3> q{eps, std::max(0.0, 1.0 - alpha - tau - eps), alpha + tau};
  return product_tv(p, q, m);
}

TvBounds trivial_bounds(double tau, BoundRegime regime) {
  TvBounds b;
  b.feasible = true;
  b.lower = tau;
  b.upper = tau;
  b.regime = regime;
  return b;
}

TvBounds infeasible_bounds() { return TvBounds{}; }

// Minimum of the binary inner-pair product TV over alpha in [lo, hi].
std::optional<ScalarOptimum> inner_minimum(double tau, int m, double lo, double hi, const BoundOptions& options) {
  return minimize_on_interval([&](double a) { return inner_objective(a, tau, m); }, std::max(0.0, lo),
                              std::min(1.0 - tau, hi), options.interval);
}

// thm3 hexagon regime with outer masses produced by `masses` and the
// lower alpha range [lo, hi].
template <class Masses>
TvBounds hexagon_bounds(double tau, int m, double floor, double lo, double hi, BoundRegime regime, Masses masses,
                        const BoundOptions& options) {
  if (m == 1) return trivial_bounds(tau, regime);
  const auto low = inner_minimum(tau, m, lo, hi, options);
  const auto high = maximize_on_triangle(
      [&](double a, double b) {
        const auto pq = masses(a, b);
        return product_tv(pq.p, pq.q, m);
      },
      floor, 1.0 - tau, options.triangle);
  if (!low || !high) return infeasible_bounds();
  TvBounds b;
  b.feasible = true;
  b.regime = regime;
  b.lower = low->value;
  b.lower_alpha = low->argument;
  b.upper = high->value;
  b.upper_argmax = *high;
  return b;
}

}  // namespace

std::string to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::none: return "none";
    case ConstraintKind::has_collapse: return "has_collapse";
    case ConstraintKind::no_collapse_no_augmentation: return "no_collapse_no_augmentation";
  }
  return "unknown";
}

ConstraintSpec ConstraintSpec::unconstrained(double tau) {
  require_tau(tau);
  return ConstraintSpec{tau, std::nullopt, ConstraintKind::none};
}

ConstraintSpec ConstraintSpec::with_collapse(double eps, double delta, double tau) {
  require_tau(tau);
  return ConstraintSpec{tau, CollapsePoint(eps, delta), ConstraintKind::has_collapse};
}

ConstraintSpec ConstraintSpec::without_collapse_or_augmentation(double eps, double delta, double tau) {
  require_tau(tau);
  return ConstraintSpec{tau, CollapsePoint(eps, delta), ConstraintKind::no_collapse_no_augmentation};
}

TvBounds thm1_bounds(double tau, int m, const BoundOptions& options) {
  require_tau(tau);
  require_m(m);
  if (m == 1) return trivial_bounds(tau, BoundRegime::unconstrained);
  const auto low = inner_minimum(tau, m, 0.0, 1.0 - tau, options);
  TvBounds b;
  b.feasible = true;
  b.regime = BoundRegime::unconstrained;
  b.lower = low->value;
  b.lower_alpha = low->argument;
  b.upper = outer_tv(tau, m);
  return b;
}

TvBounds thm2_bounds(double eps, double delta, double tau, int m, const BoundOptions& options) {
  require_point(eps, delta);
  require_tau(tau);
  require_m(m);
  const double gap = delta - eps;
  if (tau < gap - kFeasibilitySlack) return infeasible_bounds();
  if (m == 1) return trivial_bounds(tau, BoundRegime::collapse);

  const double split = 1.0 - tau * delta / gap;
  const auto ternary = minimize_on_interval([&](double a) { return inner1_objective(eps, delta, a, tau, m); }, 0.0,
                                            split, options.interval);
  const auto binary = inner_minimum(tau, m, std::max(0.0, split), 1.0 - tau, options);

  TvBounds b;
  b.feasible = true;
  b.regime = BoundRegime::collapse;
  b.upper = outer_tv(tau, m);
  if (ternary && (!binary || ternary->value <= binary->value)) {
    b.lower = ternary->value;
    b.lower_alpha = ternary->argument;
    b.lower_branch = 1;
  } else {
    b.lower = binary->value;
    b.lower_alpha = binary->argument;
    b.lower_branch = 2;
  }
  return b;
}

TvBounds thm3_bounds(double eps, double delta, double tau, int m, const BoundOptions& options) {
  require_point(eps, delta);
  require_tau(tau);
  require_m(m);
  const double gap = delta - eps;
  if (tau < gap - kFeasibilitySlack) {
    TvBounds b = thm1_bounds(tau, m, options);
    b.regime = BoundRegime::below_gap;
    return b;
  }
  if (delta + eps <= 1.0) {
    if (tau > gap / (delta + eps) + kFeasibilitySlack) return infeasible_bounds();
    const double floor = eps * tau / gap;
    return hexagon_bounds(
        tau, m, floor, floor, 1.0 - delta * tau / gap, BoundRegime::hexagon_low,
        [&](double a, double b) { return detail::outer1_masses(eps, delta, a, b, tau); }, options);
  }
  if (tau > gap / (2.0 - delta - eps) + kFeasibilitySlack) return infeasible_bounds();
  const double floor = (1.0 - delta) * tau / gap;
  return hexagon_bounds(
      tau, m, floor, floor, 1.0 - (1.0 - eps) * tau / gap, BoundRegime::hexagon_high,
      [&](double a, double b) { return detail::outer2_masses(eps, delta, a, b, tau); }, options);
}

TvBounds bounds_for(const ConstraintSpec& spec, int m, const BoundOptions& options) {
  switch (spec.kind) {
    case ConstraintKind::none: return thm1_bounds(spec.tau, m, options);
    case ConstraintKind::has_collapse:
      return thm2_bounds(spec.collapse->epsilon, spec.collapse->delta, spec.tau, m, options);
    case ConstraintKind::no_collapse_no_augmentation:
      return thm3_bounds(spec.collapse->epsilon, spec.collapse->delta, spec.tau, m, options);
  }
  throw Error(Errc::invalid_argument, "unknown constraint kind");
}

EvolutionBand evolution_band(const ConstraintSpec& spec, int m_max, const BoundOptions& options) {
  if (m_max < 1) throw Error(Errc::invalid_argument, "m_max must be >= 1");
  EvolutionBand band;
  band.entries.reserve(static_cast<std::size_t>(m_max));
  for (int m = 1; m <= m_max; ++m) {
    const TvBounds b = bounds_for(spec, m, options);
    band.entries.push_back({m, b.lower, b.upper, b.feasible});
  }
  return band;
}

std::optional<int> separation_m(const ConstraintSpec& h0, const ConstraintSpec& h1, int m_max,
                                const BoundOptions& options) {
  if (h0.kind != ConstraintKind::no_collapse_no_augmentation) {
    throw Error(Errc::invalid_argument, "H0 must be a no-collapse/no-augmentation constraint");
  }
  if (h1.kind != ConstraintKind::has_collapse) throw Error(Errc::invalid_argument, "H1 must be a has-collapse constraint");
  if (std::abs(h0.tau - h1.tau) > kFeasibilitySlack) {
    std::ostringstream os;
    os << "H0 and H1 must share tau (got " << h0.tau << " and " << h1.tau << ")";
    throw Error(Errc::invalid_argument, os.str());
  }
  if (m_max < 1) throw Error(Errc::invalid_argument, "m_max must be >= 1");
  for (int m = 1; m <= m_max; ++m) {
    const TvBounds b0 = bounds_for(h0, m, options);
    const TvBounds b1 = bounds_for(h1, m, options);
    if (b0.feasible && b1.feasible && b1.lower > b0.upper) return m;
  }
  return std::nullopt;
}

}  // namespace collapse
