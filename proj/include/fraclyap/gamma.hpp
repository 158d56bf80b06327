#pragma once

namespace fraclyap {

// Gamma function. Lanczos approximation (g = 7, 9 terms) with reflection
// for x < 0.5. Throws PoleError at nonpositive integers.
double gamma(double x);

// 1/Gamma(x), defined as 0 at the poles.
double reciprocal_gamma(double x);

bool is_nonpositive_integer(double x);

}  // namespace fraclyap
