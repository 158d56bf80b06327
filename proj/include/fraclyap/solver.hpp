#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "fraclyap/greens.hpp"
#include "fraclyap/grid.hpp"

namespace fraclyap {

// D^alpha u + f(t, u) = 0, u(a) = 0, D^beta u(b) = boundary_k, with f
// Lipschitz in u with constant lipschitz_k.
struct NonlinearProblem {
  NonlinearProblem(ProblemSpec spec, std::function<double(double, double)> f, double lipschitz_k,
                   double boundary_k = 0.0);

  ProblemSpec spec;
  std::function<double(double t, double u)> f;
  double lipschitz_k;
  double boundary_k;
};

struct PicardResult {
  GridFunction solution;
  int iterations = 0;
  std::vector<double> sup_norm_deltas;
  double predicted_contraction = 0.0;
  bool converged = false;
};

struct ResidualReport {
  double interior_residual_sup = 0.0;
  double bc_left = 0.0;
  double bc_right = 0.0;
  std::size_t grid_n = 0;
};

// u(t_i) = int_a^b G(t_i, s) h(s) ds, exact for piecewise-linear h.
GridFunction solve_linear(const ProblemSpec& p, const GridFunction& h);

// Residual of D^alpha u + source = 0 on the interior nodes plus both
// boundary conditions.
ResidualReport residual_check(const GridFunction& u, const ProblemSpec& p,
                              const GridFunction& source);

// Supremum of interval lengths b - a for which the Picard operator is a
// contraction with Lipschitz constant k.
double contraction_threshold(const ProblemSpec& p, double k);

// k * max_t int_a^b G(t, s) ds.
double predicted_contraction(const ProblemSpec& p, double k);

// Multiple of (t-a)^(alpha-1) with w(a) = 0 and D^beta w(b) = k.
GridFunction homogeneous_lift(const ProblemSpec& p, double k, const Grid& grid);

// One application of (T u)(t) = int G(t,s) f(s, u(s)) ds + lift(t).
GridFunction apply_picard_operator(const NonlinearProblem& np, const GridFunction& u);

// Iterates T from u_0 (default 0) until sup|u_{m+1} - u_m| <= tol or
// max_iter applications. Never throws on non-convergence; throws EvalError
// if f yields a non-finite value.
PicardResult picard_solve(const NonlinearProblem& np, std::size_t grid_n, double tol,
                          int max_iter, const std::optional<GridFunction>& initial = std::nullopt);

}  // namespace fraclyap
