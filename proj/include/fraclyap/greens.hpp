#pragma once

#include <Eigen/Dense>

#include "fraclyap/grid.hpp"

namespace fraclyap {

// Geometry of D^alpha u + q(t) u = 0, u(a) = 0, D^beta u(b) = 0.
// Requires 1 < alpha <= 2, 0 <= beta <= alpha - 1, a < b. A beta in
// (alpha - 1, 1] raises NoFiniteBoundError.
class ProblemSpec {
 public:
  ProblemSpec(double alpha, double beta, double a, double b);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }

  ProblemSpec with_interval(double a, double b) const { return {alpha_, beta_, a, b}; }

 private:
  double alpha_;
  double beta_;
  double a_;
  double b_;
};

struct ExtremalPoint {
  double location;
  double value;
};

// G(t, s); the s <= t branch is used only for s < t.
double greens_value(double t, double s, const ProblemSpec& p);

// g(s) = G(s, s).
double greens_diag(double s, const ProblemSpec& p);

// s* and G(s*, s*).
ExtremalPoint diag_argmax(const ProblemSpec& p);

// int_a^b G(t, s) ds in closed form.
double greens_row_integral(double t, const ProblemSpec& p);

// t* and the maximum of the row integral.
ExtremalPoint row_integral_max(const ProblemSpec& p);

// W(i, j) = int_a^b G(t_i, s) phi_j(s) ds for the hat basis phi_j of the
// grid, so that (W h)_i approximates int_a^b G(t_i, s) h(s) ds exactly for
// piecewise-linear h. All entries are >= 0; row 0 vanishes.
Eigen::MatrixXd greens_quadrature_weights(const ProblemSpec& p, const Grid& grid);

}  // namespace fraclyap
