#include "fraclyap/spectral.hpp"

#include <cmath>

#include "fraclyap/error.hpp"
#include "fraclyap/lyapunov.hpp"

namespace fraclyap {
namespace {

double sup_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

OperatorMatrix discretize_operator(const ProblemSpec& p, const GridFunction& q, std::string q_ref) {
  if (q.grid().a() != p.a() || q.grid().b() != p.b()) {
    throw GridMismatch("discretize_operator: q grid interval differs from problem interval");
  }
  return discretize_operator(greens_quadrature_weights(p, q.grid()), q, std::move(q_ref));
}

OperatorMatrix discretize_operator(const Eigen::MatrixXd& greens_weights, const GridFunction& q,
                                   std::string q_ref) {
  const auto n = static_cast<Eigen::Index>(q.size());
  if (greens_weights.rows() != n || greens_weights.cols() != n) {
    throw GridMismatch("discretize_operator: weight matrix does not match q's grid");
  }
  const Eigen::Map<const Eigen::VectorXd> qv(q.values().data(), n);
  return {greens_weights * qv.asDiagonal(), q.grid(), std::move(q_ref)};
}

SpectralReport spectral_radius(const OperatorMatrix& m, double tol, int max_iter) {
  const Eigen::MatrixXd& a = m.entries;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(a.rows());
  SpectralReport report;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int k = 0; k < max_iter; ++k) {
    const Eigen::VectorXd w = a * v;
    report.iterations = k + 1;
    const double scale = sup_norm(w);
    if (scale == 0.0) {
      report.radius = 0.0;
      report.residual = 0.0;
      report.converged = true;
      return report;
    }
    const double rayleigh = v.dot(w) / v.dot(v);
    report.radius = std::abs(rayleigh);
    report.residual = sup_norm(w - rayleigh * v) / sup_norm(v);
    v = w / scale;
    if (std::abs(rayleigh - previous) <= tol && report.residual <= tol) {
      report.converged = true;
      return report;
    }
    previous = rayleigh;
  }
  return report;
}

std::vector<ScanRow> sharpness_scan(const ProblemSpec& p, const ScanFamily& family,
                                    std::size_t samples, std::size_t grid_n, double tol,
                                    int max_iter) {
  const Grid grid(p.a(), p.b(), grid_n);
  const Eigen::MatrixXd weights = greens_quadrature_weights(p, grid);
  const double target = lyapunov_rhs(p);

  auto scaled_row = [&](const GridFunction& shape, double parameter) {
    const double integral = qplus_integral(shape);
    std::vector<double> values(shape.values().begin(), shape.values().end());
    for (double& v : values) v *= target / integral;
    const GridFunction q(grid, std::move(values));
    const SpectralReport r = spectral_radius(discretize_operator(weights, q), tol, max_iter);
    return ScanRow{parameter, qplus_integral(q), r.radius, r.converged};
  };

  std::vector<ScanRow> rows;
  if (family.kind == ScanFamily::Kind::Constant) {
    const double c = target / p.length();
    rows.push_back(scaled_row(GridFunction::constant(grid, 1.0), c));
    return rows;
  }
  if (!(family.width > 0.0)) throw DomainError("sharpness_scan: bump width must be > 0");
  if (family.center < p.a() || family.center > p.b()) {
    throw DomainError("sharpness_scan: bump center lies outside [a, b]");
  }
  double half_width = family.width;
  for (std::size_t j = 0; j < samples && half_width >= 2.0 * grid.step(); ++j) {
    const GridFunction shape = GridFunction::sample(grid, [&](double t) {
      return std::max(0.0, 1.0 - std::abs(t - family.center) / half_width);
    });
    rows.push_back(scaled_row(shape, half_width));
    half_width *= 0.5;
  }
  return rows;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << "parameter,scaled_integral,radius,converged\n";
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  for (const ScanRow& r : rows) {
    out << num(r.parameter) << ',' << num(r.scaled_integral) << ',' << num(r.radius) << ','
        << (r.converged ? "true" : "false") << '\n';
  }
}

}  // namespace fraclyap
