#pragma once

// Test-only reference computations, independent of the library's
// quadrature and closed forms.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

struct Max {
  double location;
  double value;
};

// Maximum of f over `points` equally spaced samples of [a, b].
inline Max grid_max(const std::function<double(double)>& f, double a, double b,
                    std::size_t points) {
  Max best{a, f(a)};
  for (std::size_t i = 1; i < points; ++i) {
    const double x = i + 1 == points ? b : a + (b - a) * static_cast<double>(i) / (points - 1);
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

// int_lo^hi f(s) ds where f may have a power-type derivative singularity at
// `hi` (and only there); substitution s = hi - (hi - lo) y^4 smooths it.
inline double graded_integral(const std::function<double(double)>& f, double lo, double hi,
                              int panels = 64) {
  if (hi <= lo) return 0.0;
  static const GaussLegendre gl(20);
  constexpr double power = 4.0;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double y0 = static_cast<double>(p) / panels;
    const double y1 = static_cast<double>(p + 1) / panels;
    for (std::size_t k = 0; k < gl.x.size(); ++k) {
      const double y = 0.5 * (y0 + y1) + 0.5 * (y1 - y0) * gl.x[k];
      const double s = hi - (hi - lo) * std::pow(y, power);
      const double jac = (hi - lo) * power * std::pow(y, power - 1.0);
      sum += 0.5 * (y1 - y0) * gl.w[k] * f(s) * jac;
    }
  }
  return sum;
}

// Independent Green's function straight from its defining two-branch
// formula in long double.
inline long double greens_ld(long double t, long double s, long double alpha, long double beta,
                             long double a, long double b) {
  const long double tail = alpha - 1.0L - beta;
  const long double g2 = std::pow(t - a, alpha - 1.0L) *
                         (tail == 0.0L ? 1.0L : std::pow(b - s, tail)) /
                         (tail == 0.0L ? 1.0L : std::pow(b - a, tail));
  const long double v = s <= t ? g2 - std::pow(t - s, alpha - 1.0L) : g2;
  return v / std::tgamma(alpha);
}

}  // namespace oracle
