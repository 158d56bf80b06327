#include "fraclyap/fractional.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fraclyap/error.hpp"
#include "fraclyap/gamma.hpp"

namespace fraclyap {
namespace {

bool is_integer(double x) { return std::floor(x) == x; }

// nu2 - nu1 is a positive integer up to the rounding of its operands.
bool differs_by_positive_integer(double nu1, double nu2) {
  const double d = nu2 - nu1;
  const double nearest = std::round(d);
  if (nearest < 1.0) return false;
  const double slack =
      8.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(nu1), std::abs(nu2)});
  return std::abs(d - nearest) <= slack;
}

std::vector<double> usable_exponents(std::span<const double> exponents) {
  std::vector<double> out;
  for (double s : exponents) {
    if (!(s > 0.0) || !std::isfinite(s) || is_integer(s)) continue;
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

// Starting weights (Lubich-type) on nodes 0..m-1, in units where h = 1.
// Row i makes the product rule exact on 1, t and (t-a)^sigma for each
// sigma in `exponents`. Returned row-major, size (n + 1) * m.
std::vector<double> starting_weights(const KernelMoments& unit_moments, std::size_t intervals,
                                     const std::vector<double>& exponents) {
  const double gamma_order = unit_moments.order();
  std::vector<double> sigmas = {0.0, 1.0};
  sigmas.insert(sigmas.end(), exponents.begin(), exponents.end());
  const std::size_t m = sigmas.size();

  Eigen::MatrixXd system(m, m);
  for (std::size_t l = 0; l < m; ++l) {
    for (std::size_t k = 0; k < m; ++k) system(l, k) = nonneg_pow(static_cast<double>(k), sigmas[l]);
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(system);

  std::vector<std::vector<double>> node_powers(exponents.size(),
                                               std::vector<double>(intervals + 1));
  std::vector<double> beta_factor(exponents.size());
  for (std::size_t e = 0; e < exponents.size(); ++e) {
    for (std::size_t j = 0; j <= intervals; ++j) {
      node_powers[e][j] = std::pow(static_cast<double>(j), exponents[e]);
    }
    beta_factor[e] = gamma(gamma_order) * gamma(exponents[e] + 1.0) /
                     gamma(exponents[e] + gamma_order + 1.0);
  }

  std::vector<double> weights((intervals + 1) * m, 0.0);
  Eigen::VectorXd rhs(m);
  for (std::size_t i = 1; i <= intervals; ++i) {
    rhs(0) = 0.0;
    rhs(1) = 0.0;
    for (std::size_t e = 0; e < exponents.size(); ++e) {
      long double approx = 0.0L;
      for (std::size_t j = 0; j <= i; ++j) {
        approx += static_cast<long double>(unit_moments.weight(i, j)) * node_powers[e][j];
      }
      const long double exact = static_cast<long double>(beta_factor[e]) *
                                std::pow(static_cast<long double>(i),
                                         static_cast<long double>(exponents[e] + gamma_order));
      rhs(2 + e) = static_cast<double>(exact - approx);
    }
    const Eigen::VectorXd row = lu.solve(rhs);
    for (std::size_t k = 0; k < m; ++k) weights[i * m + k] = row(k);
  }
  return weights;
}

GridFunction integrate(const GridFunction& u, double nu, const std::vector<double>& exponents) {
  const Grid& grid = u.grid();
  const std::size_t n = grid.intervals();
  const double h = grid.step();
  const KernelMoments moments(nu, n, h);
  const double inv_gamma = 1.0 / gamma(nu);
  const auto values = u.values();

  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 1; i <= n; ++i) out[i] = moments.apply(i, values);

  const std::size_t m = exponents.size() + 2;
  if (!exponents.empty() && m <= grid.size()) {
    const KernelMoments unit_moments(nu, n, 1.0);
    const std::vector<double> start = starting_weights(unit_moments, n, exponents);
    const double h_nu = std::pow(h, nu);
    for (std::size_t i = 1; i <= n; ++i) {
      double correction = 0.0;
      for (std::size_t k = 0; k < m; ++k) correction += start[i * m + k] * values[k];
      out[i] += h_nu * correction;
    }
  }
  for (double& v : out) v *= inv_gamma;
  return GridFunction(grid, std::move(out));
}

std::vector<double> differentiate(std::span<const double> v, int order, double h) {
  const std::size_t size = v.size();
  const std::size_t last = size - 1;
  std::vector<double> d(size);
  if (order == 1) {
    const double inv = 1.0 / (2.0 * h);
    for (std::size_t i = 1; i < last; ++i) d[i] = (v[i + 1] - v[i - 1]) * inv;
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) * inv;
    d[last] = (3.0 * v[last] - 4.0 * v[last - 1] + v[last - 2]) * inv;
  } else {
    const double inv = 1.0 / (h * h);
    for (std::size_t i = 1; i < last; ++i) d[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) * inv;
    if (size >= 4) {
      d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) * inv;
      d[last] = (2.0 * v[last] - 5.0 * v[last - 1] + 4.0 * v[last - 2] - v[last - 3]) * inv;
    } else {
      d[0] = d[1];
      d[last] = d[1];
    }
  }
  return d;
}

}  // namespace

FractionalOrder::FractionalOrder(double value) : value_(value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError("fractional order must be finite and >= 0, got " + std::to_string(value));
  }
}

double nonneg_pow(double base, double exponent) {
  if (base < 0.0) throw std::logic_error("nonneg_pow: negative base " + std::to_string(base));
  if (exponent == 0.0) return 1.0;
  return std::pow(base, exponent);
}

KernelMoments::KernelMoments(double gamma, std::size_t intervals, double step)
    : gamma_(gamma),
      scale_(std::pow(step, gamma) / (gamma * (gamma + 1.0))),
      first_(intervals + 1, 0.0),
      second_diff_(intervals + 1, 0.0) {
  if (!(gamma > 0.0)) throw DomainError("kernel order must be > 0");
  const double p = gamma + 1.0;
  // (k+1)^p - 2 k^p + (k-1)^p, written to avoid cancellation for large k.
  for (std::size_t k = 1; k <= intervals; ++k) {
    const double x = 1.0 / static_cast<double>(k);
    second_diff_[k] = std::pow(static_cast<double>(k), p) *
                      (std::expm1(p * std::log1p(x)) + std::expm1(p * std::log1p(-x)));
  }
  // (i-1)^p - (i-1-gamma) i^gamma
  if (intervals >= 1) first_[1] = gamma;
  for (std::size_t i = 2; i <= intervals; ++i) {
    const double di = static_cast<double>(i);
    const double x = 1.0 / di;
    first_[i] = std::pow(di, gamma) * di * (std::expm1(p * std::log1p(-x)) + p * x);
  }
}

double KernelMoments::weight(std::size_t i, std::size_t j) const {
  if (i == 0 || j > i) return 0.0;
  if (j == i) return scale_;
  if (j == 0) return scale_ * first_[i];
  return scale_ * second_diff_[i - j];
}

double KernelMoments::apply(std::size_t i, std::span<const double> values) const {
  if (i == 0) return 0.0;
  double sum = first_[i] * values[0] + values[i];
  for (std::size_t j = 1; j < i; ++j) sum += second_diff_[i - j] * values[j];
  return scale_ * sum;
}

double power_rule_integral(double nu1, double nu2, double t, double a) {
  if (!(nu1 > -1.0) || !(nu2 >= 0.0) || !(t >= a)) {
    throw DomainError("power_rule_integral: need nu1 > -1, nu2 >= 0, t >= a");
  }
  return gamma(nu1 + 1.0) / gamma(nu2 + nu1 + 1.0) * nonneg_pow(t - a, nu2 + nu1);
}

double power_rule_derivative(double nu1, double nu2, double t, double a) {
  if (!(nu1 > -1.0) || !(nu2 >= 0.0) || !(t > a)) {
    throw DomainError("power_rule_derivative: need nu1 > -1, nu2 >= 0, t > a");
  }
  if (differs_by_positive_integer(nu1, nu2)) return 0.0;
  return gamma(nu1 + 1.0) * reciprocal_gamma(nu1 + 1.0 - nu2) * nonneg_pow(t - a, nu1 - nu2);
}

GridFunction frac_integral(const GridFunction& u, FractionalOrder nu) {
  if (!(nu.value() > 0.0)) throw DomainError("frac_integral: order must be > 0");
  return integrate(u, nu.value(), {});
}

GridFunction frac_integral(const GridFunction& u, FractionalOrder nu,
                           std::span<const double> singular_exponents) {
  if (!(nu.value() > 0.0)) throw DomainError("frac_integral: order must be > 0");
  return integrate(u, nu.value(), usable_exponents(singular_exponents));
}

FractionalDerivative frac_derivative(const GridFunction& u, FractionalOrder alpha) {
  const double exponents[] = {alpha.value() - 1.0, alpha.value()};
  return frac_derivative(u, alpha, exponents);
}

FractionalDerivative frac_derivative(const GridFunction& u, FractionalOrder alpha,
                                     std::span<const double> singular_exponents) {
  const double order = alpha.value();
  if (!(order > 0.0) || order > 2.0) {
    throw DomainError("frac_derivative: order must lie in (0, 2], got " + std::to_string(order));
  }
  const int n = static_cast<int>(std::ceil(order));
  const double inner = static_cast<double>(n) - order;
  std::vector<double> v;
  if (inner > 0.0) {
    const GridFunction integral =
        integrate(u, inner, usable_exponents(singular_exponents));
    v.assign(integral.values().begin(), integral.values().end());
  } else {
    v.assign(u.values().begin(), u.values().end());
  }
  return {GridFunction(u.grid(), differentiate(v, n, u.grid().step())), true};
}

}  // namespace fraclyap
