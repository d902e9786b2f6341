#include "collapse/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "collapse/error.hpp"

namespace collapse {

namespace {

constexpr double kSlack = 1e-12;

[[noreturn]] void infeasible(const std::string& why) { throw Error(Errc::infeasible_parameters, why); }

void require_unit(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    std::ostringstream os;
    os << name << " = " << value << " is outside [0, 1]";
    throw Error(Errc::invalid_argument, os.str());
  }
}

void require_collapse_point(double eps, double delta) {
  if (!(0.0 <= eps && eps < delta && delta <= 1.0)) {
    std::ostringstream os;
    os << "need 0 <= eps < delta <= 1, got (" << eps << ", " << delta << ")";
    throw Error(Errc::invalid_argument, os.str());
  }
}

// Rejects masses below -kSlack and clamps the rest to zero.
std::vector<double> checked_masses(std::vector<double> masses, const char* what) {
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!std::isfinite(masses[i]) || masses[i] < -kSlack) {
      std::ostringstream os;
      os << what << " mass " << i << " = " << masses[i];
      infeasible(os.str());
    }
    masses[i] = std::max(0.0, masses[i]);
  }
  return masses;
}

DistributionPair build(std::vector<double> p, std::vector<double> q, const char* what) {
  return collapse::make_pair(checked_masses(std::move(p), what), checked_masses(std::move(q), what));
}

}  // namespace

DistributionPair inner_pair(double alpha, double tau) {
  require_unit(tau, "tau");
  if (!(alpha >= -kSlack && alpha <= 1.0 - tau + kSlack)) {
    std::ostringstream os;
    os << "alpha = " << alpha << " outside [0, 1 - tau] for tau = " << tau;
    throw Error(Errc::alpha_out_of_range, os.str());
  }
  alpha = std::clamp(alpha, 0.0, 1.0 - tau);
  return build({1.0 - alpha, alpha}, {1.0 - alpha - tau, alpha + tau}, "inner");
}

DistributionPair inner2_pair(double alpha, double tau) { return inner_pair(alpha, tau); }

DistributionPair outer_pair(double tau) {
  require_unit(tau, "tau");
  return build({tau, 1.0 - tau, 0.0}, {0.0, 1.0 - tau, tau}, "outer");
}

DistributionPair inner1_pair(double eps, double delta, double alpha, double tau) {
  require_collapse_point(eps, delta);
  require_unit(tau, "tau");
  const double alpha_max = 1.0 - tau * delta / (delta - eps);
  if (!(alpha >= -kSlack && alpha <= alpha_max + kSlack)) {
    std::ostringstream os;
    os << "alpha = " << alpha << " outside [0, 1 - tau*delta/(delta-eps)] = [0, " << alpha_max << "]";
    infeasible(os.str());
  }
  return build({delta, 1.0 - alpha - delta, alpha}, {eps, 1.0 - alpha - tau - eps, alpha + tau}, "inner1");
}

namespace {

void check_outer_ranges(double alpha, double beta, double tau, double floor, const char* what) {
  if (alpha + beta > 1.0 - tau + kSlack) {
    std::ostringstream os;
    os << what << ": alpha + beta = " << alpha + beta << " exceeds 1 - tau = " << 1.0 - tau;
    infeasible(os.str());
  }
  if (alpha < floor - kSlack || beta < floor - kSlack) {
    std::ostringstream os;
    os << what << ": alpha and beta must be >= " << floor;
    infeasible(os.str());
  }
}

}  // namespace

DistributionPair outer1_pair(double eps, double delta, double alpha, double beta, double tau) {
  require_collapse_point(eps, delta);
  require_unit(tau, "tau");
  if (delta + eps > 1.0) infeasible("outer1 requires delta + eps <= 1");
  check_outer_ranges(alpha, beta, tau, eps * tau / (delta - eps), "outer1");
  if (alpha - eps == 0.0 || beta - eps == 0.0) infeasible("outer1: alpha - eps or beta - eps is zero");
  const double gap = delta - eps;
  std::vector<double> p{(alpha * gap - eps * tau) / (alpha - eps), alpha * (alpha + tau - delta) / (alpha - eps),
                        1.0 - tau - alpha - beta, beta, 0.0};
  std::vector<double> q{0.0, alpha, 1.0 - tau - alpha - beta, beta * (beta + tau - delta) / (beta - eps),
                        (beta * gap - eps * tau) / (beta - eps)};
  return build(std::move(p), std::move(q), "outer1");
}

DistributionPair outer2_pair(double eps, double delta, double alpha, double beta, double tau) {
  require_collapse_point(eps, delta);
  require_unit(tau, "tau");
  if (delta + eps <= 1.0) infeasible("outer2 requires delta + eps > 1");
  check_outer_ranges(alpha, beta, tau, (1.0 - delta) * tau / (delta - eps), "outer2");
  const double shift = 1.0 - delta;
  if (alpha - shift == 0.0 || beta - shift == 0.0) infeasible("outer2: alpha - (1-delta) or beta - (1-delta) is zero");
  const double gap = delta - eps;
  std::vector<double> p{(alpha * gap - shift * tau) / (alpha - shift),
                        alpha * (alpha + tau - (1.0 - eps)) / (alpha - shift), 1.0 - tau - alpha - beta, beta, 0.0};
  std::vector<double> q{0.0, alpha, 1.0 - tau - alpha - beta,
                        beta * (beta + tau - (1.0 - eps)) / (beta - shift),
                        (beta * gap - shift * tau) / (beta - shift)};
  return build(std::move(p), std::move(q), "outer2");
}

namespace detail {

namespace {

// Masses of the two outer atoms attached to one tangent endpoint t. With
// excess = tau - (delta - eps) they are
//   first  = (t(delta-eps) - eps*tau)/(t-eps) = (delta-eps) - eps*excess/(t-eps)
//   second = t(t+tau-delta)/(t-eps)           = t + t*excess/(t-eps).
std::array<double, 2> endpoint_masses(double eps, double delta, double t, double tau) {
  double excess = tau - (delta - eps);
  if (std::abs(excess) <= 1e-15) excess = 0.0;
  double first = delta - eps;
  double second = t;
  if (excess != 0.0) {
    if (eps == 0.0) {
      second += excess;
    } else {
      first -= eps * excess / (t - eps);
      second += t * excess / (t - eps);
    }
  }
  return {std::max(0.0, first), std::max(0.0, second)};
}

}  // namespace

OuterMasses outer1_masses(double eps, double delta, double alpha, double beta, double tau) {
  const auto left = endpoint_masses(eps, delta, alpha, tau);
  const auto right = endpoint_masses(eps, delta, beta, tau);
  const double middle = std::max(0.0, 1.0 - tau - alpha - beta);
  return {{left[0], left[1], middle, beta, 0.0}, {0.0, alpha, middle, right[1], right[0]}};
}

OuterMasses outer2_masses(double eps, double delta, double alpha, double beta, double tau) {
  return outer1_masses(1.0 - delta, 1.0 - eps, alpha, beta, tau);
}

}  // namespace detail

}  // namespace collapse
