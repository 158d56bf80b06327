#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "fraclyap/greens.hpp"
#include "fraclyap/grid.hpp"

namespace fraclyap {

// Nystrom matrix of (K_q u)(t) = int_a^b G(t,s) q(s) u(s) ds acting on node
// values.
struct OperatorMatrix {
  Eigen::MatrixXd entries;
  Grid grid;
  std::string q_ref;
};

struct SpectralReport {
  double radius = 0.0;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;
};

OperatorMatrix discretize_operator(const ProblemSpec& p, const GridFunction& q,
                                   std::string q_ref = {});

// Same matrix from precomputed Green's quadrature weights (see
// greens_quadrature_weights); lets callers reuse the weights across many q.
OperatorMatrix discretize_operator(const Eigen::MatrixXd& greens_weights, const GridFunction& q,
                                   std::string q_ref = {});

// Power iteration from the all-ones vector with sup-norm normalization.
// Converged once successive Rayleigh quotients differ by <= tol and the
// eigen-residual |M v - r v|_inf / |v|_inf is <= tol.
SpectralReport spectral_radius(const OperatorMatrix& m, double tol, int max_iter);

struct ScanFamily {
  enum class Kind { Constant, Bump };
  Kind kind = Kind::Constant;
  double center = 0.0;  // bump only
  double width = 0.0;   // bump only: initial half-width

  static ScanFamily constant() { return {}; }
  static ScanFamily bump_at(double center, double width) { return {Kind::Bump, center, width}; }
};

struct ScanRow {
  double parameter;  // constant value, or bump half-width
  double scaled_integral;
  double radius;
  bool converged;
};

// For each q in the family scaled so that int q_+ = lyapunov_rhs(p), the
// spectral radius of K_q. The constant family yields one row; the bump
// family halves the half-width per row, stopping before it drops below two
// grid cells.
std::vector<ScanRow> sharpness_scan(const ProblemSpec& p, const ScanFamily& family,
                                    std::size_t samples, std::size_t grid_n, double tol,
                                    int max_iter);

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);

}  // namespace fraclyap
