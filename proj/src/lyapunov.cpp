#include "fraclyap/lyapunov.hpp"

#include <algorithm>
#include <cmath>

#include "fraclyap/error.hpp"
#include "fraclyap/gamma.hpp"

namespace fraclyap {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::NoNontrivialSolution:
      return "NoNontrivialSolution";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

double lyapunov_rhs(const ProblemSpec& p) {
  const double am1 = p.alpha() - 1.0;
  const double tail = am1 - p.beta();
  const double ratio = 2.0 * p.alpha() - 2.0 - p.beta();
  const double first = std::pow(ratio / (p.length() * am1), am1);
  const double second = tail == 0.0 ? 1.0 : std::exp(tail * std::log(ratio / tail));
  return gamma(p.alpha()) * first * second;
}

double qplus_integral(const GridFunction& q) {
  const auto v = q.values();
  double sum = 0.5 * (std::max(v.front(), 0.0) + std::max(v.back(), 0.0));
  for (std::size_t i = 1; i + 1 < v.size(); ++i) sum += std::max(v[i], 0.0);
  return sum * q.grid().step();
}

BoundReport nonexistence_verdict(const ProblemSpec& p, const GridFunction& q) {
  if (q.grid().a() != p.a() || q.grid().b() != p.b()) {
    throw GridMismatch("nonexistence_verdict: q is sampled on [" + std::to_string(q.grid().a()) +
                       ", " + std::to_string(q.grid().b()) + "], problem interval is [" +
                       std::to_string(p.a()) + ", " + std::to_string(p.b()) + "]");
  }
  const double rhs = lyapunov_rhs(p);
  const double integral = qplus_integral(q);
  const Verdict verdict =
      integral <= rhs ? Verdict::NoNontrivialSolution : Verdict::Inconclusive;
  return {rhs, integral, verdict, diag_argmax(p), row_integral_max(p)};
}

}  // namespace fraclyap
