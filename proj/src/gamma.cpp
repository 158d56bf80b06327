#include "fraclyap/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "fraclyap/error.hpp"

namespace fraclyap {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// sin(pi x) with argument reduction so that values near integers keep
// their relative accuracy.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0.0) r += 2.0;
  if (r > 1.0) return -sin_pi(r - 1.0);
  if (r > 0.5) r = 1.0 - r;
  return std::sin(std::numbers::pi * r);
}

double lanczos(double x) {
  // Gamma(x) for x >= 0.5.
  const double z = x - 1.0;
  double sum = kLanczosCoeffs[0];
  for (std::size_t k = 1; k < kLanczosCoeffs.size(); ++k) {
    sum += kLanczosCoeffs[k] / (z + static_cast<double>(k));
  }
  const double t = z + kLanczosG + 0.5;
  // t^(z+0.5) split in halves to delay overflow.
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) * sum;
}

}  // namespace

bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

double gamma(double x) {
  if (std::isnan(x)) throw DomainError("gamma: argument is NaN");
  if (is_nonpositive_integer(x)) {
    throw PoleError("gamma: pole at nonpositive integer " + std::to_string(x));
  }
  if (x < 0.5) return std::numbers::pi / (sin_pi(x) * lanczos(1.0 - x));
  return lanczos(x);
}

double reciprocal_gamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / gamma(x);
}

}  // namespace fraclyap
