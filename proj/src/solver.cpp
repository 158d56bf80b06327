#include "fraclyap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fraclyap/error.hpp"
#include "fraclyap/fractional.hpp"
#include "fraclyap/gamma.hpp"

namespace fraclyap {
namespace {

// Iterates beyond this size are treated as divergent.
constexpr double kDivergenceLimit = 1e150;

Grid problem_grid(const ProblemSpec& p, std::size_t n) { return Grid(p.a(), p.b(), n); }

void require_problem_grid(const ProblemSpec& p, const Grid& grid, const char* context) {
  if (grid.a() != p.a() || grid.b() != p.b()) {
    throw GridMismatch(std::string(context) + ": grid interval differs from problem interval");
  }
}

std::vector<double> multiply(const Eigen::MatrixXd& w, const std::vector<double>& x) {
  const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  const Eigen::VectorXd r = w * v;
  return {r.data(), r.data() + r.size()};
}

class PicardOperator {
 public:
  PicardOperator(const NonlinearProblem& np, const Grid& grid)
      : np_(np),
        grid_(grid),
        weights_(greens_quadrature_weights(np.spec, grid)),
        lift_(homogeneous_lift(np.spec, np.boundary_k, grid)) {}

  std::vector<double> apply(std::span<const double> u) const {
    std::vector<double> rhs(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double t = grid_.node(i);
      const double value = np_.f(t, u[i]);
      if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << "nonlinearity returned a non-finite value at t = " << t << ", u = " << u[i];
        throw EvalError(msg.str());
      }
      rhs[i] = value;
    }
    std::vector<double> out = multiply(weights_, rhs);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += lift_[i];
    return out;
  }

 private:
  const NonlinearProblem& np_;
  Grid grid_;
  Eigen::MatrixXd weights_;
  GridFunction lift_;
};

}  // namespace

NonlinearProblem::NonlinearProblem(ProblemSpec spec_, std::function<double(double, double)> f_,
                                   double lipschitz_k_, double boundary_k_)
    : spec(spec_), f(std::move(f_)), lipschitz_k(lipschitz_k_), boundary_k(boundary_k_) {
  if (!(lipschitz_k > 0.0) || !std::isfinite(lipschitz_k)) {
    throw DomainError("Lipschitz constant must be finite and > 0");
  }
  if (!std::isfinite(boundary_k)) throw DomainError("boundary value k must be finite");
  if (!f) throw DomainError("nonlinearity is empty");
}

GridFunction solve_linear(const ProblemSpec& p, const GridFunction& h) {
  require_problem_grid(p, h.grid(), "solve_linear");
  const Eigen::MatrixXd w = greens_quadrature_weights(p, h.grid());
  std::vector<double> u = multiply(w, std::vector<double>(h.values().begin(), h.values().end()));
  u[0] = 0.0;
  return GridFunction(h.grid(), std::move(u));
}

ResidualReport residual_check(const GridFunction& u, const ProblemSpec& p,
                              const GridFunction& source) {
  require_same_grid(u.grid(), source.grid(), "residual_check");
  require_problem_grid(p, u.grid(), "residual_check");
  const double exponents[] = {p.alpha() - 1.0, p.alpha()};

  ResidualReport report;
  report.grid_n = u.grid().intervals();
  const FractionalDerivative d = frac_derivative(u, FractionalOrder(p.alpha()), exponents);
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    report.interior_residual_sup =
        std::max(report.interior_residual_sup, std::abs(d.values[i] + source[i]));
  }
  report.bc_left = std::abs(u[0]);
  if (p.beta() > 0.0) {
    const FractionalDerivative db = frac_derivative(u, FractionalOrder(p.beta()), exponents);
    report.bc_right = std::abs(db.values[u.size() - 1]);
  } else {
    report.bc_right = std::abs(u[u.size() - 1]);
  }
  return report;
}

double contraction_threshold(const ProblemSpec& p, double k) {
  if (!(k > 0.0)) throw DomainError("contraction_threshold: K must be > 0");
  const double alpha = p.alpha();
  const double am1 = alpha - 1.0;
  return std::pow(std::pow(alpha - p.beta(), alpha) * gamma(alpha + 1.0) / (k * std::pow(am1, am1)),
                  1.0 / alpha);
}

double predicted_contraction(const ProblemSpec& p, double k) {
  return k * row_integral_max(p).value;
}

GridFunction homogeneous_lift(const ProblemSpec& p, double k, const Grid& grid) {
  require_problem_grid(p, grid, "homogeneous_lift");
  const double alpha = p.alpha();
  const double coeff = k * gamma(alpha - p.beta()) /
                       (gamma(alpha) * nonneg_pow(p.length(), alpha - 1.0 - p.beta()));
  return GridFunction::sample(
      grid, [&](double t) { return coeff * nonneg_pow(t - p.a(), alpha - 1.0); });
}

GridFunction apply_picard_operator(const NonlinearProblem& np, const GridFunction& u) {
  const PicardOperator op(np, u.grid());
  return GridFunction(u.grid(), op.apply(u.values()));
}

PicardResult picard_solve(const NonlinearProblem& np, std::size_t grid_n, double tol,
                          int max_iter, const std::optional<GridFunction>& initial) {
  if (!(tol > 0.0)) throw DomainError("picard_solve: tol must be > 0");
  const Grid grid = problem_grid(np.spec, grid_n);
  if (initial) require_same_grid(initial->grid(), grid, "picard_solve initial iterate");
  const PicardOperator op(np, grid);

  std::vector<double> u = initial ? std::vector<double>(initial->values().begin(),
                                                         initial->values().end())
                                  : std::vector<double>(grid.size(), 0.0);
  PicardResult result{GridFunction(grid, u), 0, {},
                      predicted_contraction(np.spec, np.lipschitz_k), false};
  for (int m = 0; m < max_iter; ++m) {
    std::vector<double> next = op.apply(u);
    double delta = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (!std::isfinite(next[i]) || std::abs(next[i]) > kDivergenceLimit) finite = false;
      delta = std::max(delta, std::abs(next[i] - u[i]));
    }
    if (!finite) break;
    result.iterations = m + 1;
    result.sup_norm_deltas.push_back(delta);
    u = std::move(next);
    if (delta <= tol) {
      result.converged = true;
      break;
    }
  }
  result.solution = GridFunction(grid, std::move(u));
  return result;
}

}  // namespace fraclyap
