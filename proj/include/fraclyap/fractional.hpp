#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fraclyap/grid.hpp"

namespace fraclyap {

class FractionalOrder {
 public:
  explicit FractionalOrder(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

// base^exponent for base >= 0, with base^0 == 1 (including 0^0).
// Throws std::logic_error on a negative base.
double nonneg_pow(double base, double exponent);

// Moments of the weakly singular kernel against the hat basis of a uniform
// grid: weight(i, j) = int_{t_0}^{t_i} (t_i - s)^(gamma - 1) phi_j(s) ds,
// j <= i. Product trapezoidal weights; exact for piecewise-linear data.
class KernelMoments {
 public:
  KernelMoments(double gamma, std::size_t intervals, double step);

  double order() const noexcept { return gamma_; }
  double weight(std::size_t i, std::size_t j) const;
  // sum_j weight(i, j) * values[j]
  double apply(std::size_t i, std::span<const double> values) const;

 private:
  double gamma_;
  double scale_;
  std::vector<double> first_;        // j = 0 coefficient for each row i
  std::vector<double> second_diff_;  // 0 < j < i coefficient, indexed by i - j
};

// I^{nu2} (t-a)^{nu1} evaluated at t.
double power_rule_integral(double nu1, double nu2, double t, double a);

// D^{nu2} (t-a)^{nu1} evaluated at t; exactly 0 when nu2 - nu1 is a
// positive integer.
double power_rule_derivative(double nu1, double nu2, double t, double a);

// Riemann-Liouville integral I_{a+}^nu sampled on u's grid (product
// trapezoidal rule). Value at t_0 is 0.
GridFunction frac_integral(const GridFunction& u, FractionalOrder nu);

// Same rule plus starting-weight corrections that make it exact on
// (t-a)^sigma for each sigma listed (in addition to linear functions).
// Nonpositive and integer exponents are ignored.
GridFunction frac_integral(const GridFunction& u, FractionalOrder nu,
                           std::span<const double> singular_exponents);

struct FractionalDerivative {
  GridFunction values;
  // t_0 and t_n use one-sided differences and carry lower accuracy.
  bool endpoints_low_accuracy = true;
};

// Riemann-Liouville derivative D^alpha = D^n I^{n-alpha}, n = ceil(alpha),
// 0 < alpha <= 2. The inner integral is corrected for the exponents
// alpha - 1 and alpha, the natural singular terms of functions in the
// domain of D^alpha.
FractionalDerivative frac_derivative(const GridFunction& u, FractionalOrder alpha);

FractionalDerivative frac_derivative(const GridFunction& u, FractionalOrder alpha,
                                     std::span<const double> singular_exponents);

}  // namespace fraclyap
