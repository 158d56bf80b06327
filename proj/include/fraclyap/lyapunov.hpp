#pragma once

#include <string_view>

#include "fraclyap/greens.hpp"
#include "fraclyap/grid.hpp"

namespace fraclyap {

enum class Verdict { NoNontrivialSolution, Inconclusive };

std::string_view to_string(Verdict v);

struct BoundReport {
  double rhs;
  double q_plus_integral;
  Verdict verdict;
  ExtremalPoint s_star;
  ExtremalPoint t_star;
};

// Right-hand side of the Lyapunov-type inequality, 1 / G(s*, s*).
double lyapunov_rhs(const ProblemSpec& p);

// Trapezoidal integral of max(q, 0) on q's grid.
double qplus_integral(const GridFunction& q);

// NoNontrivialSolution iff int q_+ <= rhs; otherwise Inconclusive.
BoundReport nonexistence_verdict(const ProblemSpec& p, const GridFunction& q);

}  // namespace fraclyap
