#include "fraclyap/greens.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fraclyap/error.hpp"
#include "fraclyap/fractional.hpp"
#include "fraclyap/gamma.hpp"

namespace fraclyap {
namespace {

// Rounding in a computed beta such as 1.1 - 1 must not push it past alpha - 1.
constexpr double kBetaSnap = 1e-12;

void require_in_interval(double x, const ProblemSpec& p, const char* what) {
  if (!(x >= p.a() && x <= p.b())) {
    throw DomainError(std::string(what) + " = " + std::to_string(x) + " lies outside [a, b]");
  }
}

}  // namespace

ProblemSpec::ProblemSpec(double alpha, double beta, double a, double b)
    : alpha_(alpha), beta_(beta), a_(a), b_(b) {
  if (!std::isfinite(alpha) || !(alpha > 1.0 && alpha <= 2.0)) {
    throw DomainError("alpha must lie in (1, 2], got " + std::to_string(alpha));
  }
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw DomainError("interval must satisfy a < b");
  }
  if (!std::isfinite(beta) || beta < 0.0) {
    throw DomainError("beta must be >= 0, got " + std::to_string(beta));
  }
  if (beta > alpha - 1.0) {
    if (beta - (alpha - 1.0) <= kBetaSnap) {
      beta_ = alpha - 1.0;
    } else if (beta <= 1.0) {
      throw NoFiniteBoundError(
          "beta = " + std::to_string(beta) + " lies in (alpha - 1, 1] = (" +
          std::to_string(alpha - 1.0) +
          ", 1]: the Green's function diagonal G(s,s) is unbounded as s -> b, so it has "
          "no maximum and no finite Lyapunov constant exists; need beta <= alpha - 1");
    } else {
      throw DomainError("beta must be <= alpha - 1, got " + std::to_string(beta));
    }
  }
}

double greens_value(double t, double s, const ProblemSpec& p) {
  require_in_interval(t, p, "t");
  require_in_interval(s, p, "s");
  const double alpha = p.alpha();
  const double tail = alpha - 1.0 - p.beta();
  const double g2 = nonneg_pow(t - p.a(), alpha - 1.0) * nonneg_pow(p.b() - s, tail) /
                    nonneg_pow(p.length(), tail);
  if (s < t) return (g2 - nonneg_pow(t - s, alpha - 1.0)) / gamma(alpha);
  return g2 / gamma(alpha);
}

double greens_diag(double s, const ProblemSpec& p) {
  require_in_interval(s, p, "s");
  const double alpha = p.alpha();
  const double tail = alpha - 1.0 - p.beta();
  return nonneg_pow(s - p.a(), alpha - 1.0) * nonneg_pow(p.b() - s, tail) /
         (nonneg_pow(p.length(), tail) * gamma(alpha));
}

ExtremalPoint diag_argmax(const ProblemSpec& p) {
  const double am1 = p.alpha() - 1.0;
  const double tail = am1 - p.beta();
  const double denom = 2.0 * p.alpha() - 2.0 - p.beta();
  const double location = std::clamp((am1 * p.b() + tail * p.a()) / denom, p.a(), p.b());
  const double first = std::pow(p.length() * am1 / denom, am1);
  const double second = tail == 0.0 ? 1.0 : std::exp(tail * std::log(tail / denom));
  return {location, first * second / gamma(p.alpha())};
}

double greens_row_integral(double t, const ProblemSpec& p) {
  require_in_interval(t, p, "t");
  const double alpha = p.alpha();
  const double x = t - p.a();
  return nonneg_pow(x, alpha - 1.0) / gamma(alpha + 1.0) *
         (alpha / (alpha - p.beta()) * p.length() - x);
}

ExtremalPoint row_integral_max(const ProblemSpec& p) {
  const double alpha = p.alpha();
  const double am1 = alpha - 1.0;
  const double amb = alpha - p.beta();
  const double location = std::min(p.a() + am1 / amb * p.length(), p.b());
  const double value =
      std::pow(am1, am1) / (std::pow(amb, alpha) * gamma(alpha + 1.0)) * std::pow(p.length(), alpha);
  return {location, value};
}

Eigen::MatrixXd greens_quadrature_weights(const ProblemSpec& p, const Grid& grid) {
  if (grid.a() != p.a() || grid.b() != p.b()) {
    throw GridMismatch("greens weights: grid interval differs from problem interval");
  }
  const std::size_t n = grid.intervals();
  const double h = grid.step();
  const double alpha = p.alpha();
  const double tail = alpha - 1.0 - p.beta();
  // int_a^b (b-s)^(alpha-beta-1) phi_j(s) ds is row n of the moments of order alpha - beta.
  const KernelMoments boundary(alpha - p.beta(), n, h);
  const KernelMoments volterra(alpha, n, h);
  const double inv_gamma = 1.0 / gamma(alpha);
  const double inv_length_pow = 1.0 / nonneg_pow(p.length(), tail);

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(grid.size(), grid.size());
  for (std::size_t i = 1; i <= n; ++i) {
    const double lead = nonneg_pow(grid.node(i) - p.a(), alpha - 1.0) * inv_length_pow;
    for (std::size_t j = 0; j <= n; ++j) {
      const double entry = lead * boundary.weight(n, j) - volterra.weight(i, j);
      // integral of a nonnegative integrand; clamp rounding below zero
      w(i, j) = std::max(entry, 0.0) * inv_gamma;
    }
  }
  return w;
}

}  // namespace fraclyap
