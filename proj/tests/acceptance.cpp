// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "fraclyap/expr.hpp"
#include "fraclyap/fractional.hpp"
#include "fraclyap/gamma.hpp"
#include "fraclyap/greens.hpp"
#include "fraclyap/lyapunov.hpp"
#include "fraclyap/solver.hpp"
#include "fraclyap/spectral.hpp"
#include "lattice.hpp"
#include "oracles.hpp"
#include "random_expr.hpp"
#include "test_support.hpp"

using namespace fraclyap;
using std::numbers::pi;

namespace {

struct Check {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

// --- 1 ---------------------------------------------------------------------
Check classical_reduction() {
  Check c;
  const ProblemSpec p(2.0, 0.0, 0.0, 1.0);
  const double rhs = lyapunov_rhs(p);
  const double diag = diag_argmax(p).value;
  const double row = row_integral_max(p).value;
  c.require(std::abs(rhs - 4.0) <= 1e-12, fmt::format("rhs={:.17g}", rhs));
  c.require(std::abs(diag - 0.25) <= 1e-12, fmt::format("diag max={:.17g}", diag));
  c.require(std::abs(row - 0.125) <= 1e-12, fmt::format("row max={:.17g}", row));
  if (c.pass) c.detail = fmt::format("rhs={:.17g} diag={:.17g} row={:.17g}", rhs, diag, row);
  return c;
}

// --- 2 ---------------------------------------------------------------------
Check beta_zero_reduction() {
  Check c;
  double worst = 0.0;
  for (double alpha : {1.1, 1.25, 1.5, 1.75, 2.0}) {
    const double expected = std::tgamma(alpha) * std::pow(4.0, alpha - 1.0);
    const double got = lyapunov_rhs(ProblemSpec(alpha, 0.0, 0.0, 1.0));
    worst = std::max(worst, std::abs(got - expected));
    c.require(std::abs(got - expected) <= 1e-12,
              fmt::format("alpha={} got {:.17g} want {:.17g}", alpha, got, expected));
  }
  if (c.pass) c.detail = fmt::format("max |error| = {:.3g} over 5 orders", worst);
  return c;
}

// --- 3 ---------------------------------------------------------------------
// Diagonal and row integral of G straight from its two-branch definition
// (the second branch vanishes on the diagonal and integrates in closed form).
struct DirectForms {
  double alpha, beta, a, b, inv_gamma;
  double diag(double s) const {
    const double tail = alpha - 1.0 - beta;
    return std::pow(s - a, alpha - 1.0) * std::pow((b - s) / (b - a), tail) * inv_gamma;
  }
  double row(double t) const {
    const double x = t - a;
    return (std::pow(x, alpha - 1.0) * (b - a) / (alpha - beta) - std::pow(x, alpha) / alpha) *
           inv_gamma;
  }
};

Check closed_form_vs_brute_force() {
  Check c;
  constexpr std::size_t points = 1000001;
  const double a = 0.0, b = 1.0;
  const double cell = (b - a) / (points - 1);
  double worst_loc = 0.0, worst_rel = 0.0;
  for (const auto& [alpha, beta] : alpha_beta_lattice()) {
    const ProblemSpec p(alpha, beta, a, b);
    const ExtremalPoint diag = diag_argmax(p);
    const ExtremalPoint row = row_integral_max(p);
    const DirectForms direct{alpha, beta, a, b, 1.0 / std::tgamma(alpha)};
    const auto diag_bf = oracle::grid_max([&](double s) { return direct.diag(s); }, a, b, points);
    const auto row_bf = oracle::grid_max([&](double t) { return direct.row(t); }, a, b, points);
    for (const auto& [name, closed, bf] :
         {std::tuple{"diag", diag, diag_bf}, std::tuple{"row", row, row_bf}}) {
      const double dloc = std::abs(closed.location - bf.location);
      const double rel = std::abs(closed.value - bf.value) / std::abs(bf.value);
      worst_loc = std::max(worst_loc, dloc / cell);
      worst_rel = std::max(worst_rel, rel);
      c.require(dloc <= cell, fmt::format("{} location ({},{}) off by {:.3g} cells", name, alpha,
                                          beta, dloc / cell));
      c.require(rel <= 1e-8, fmt::format("{} value ({},{}) rel {:.3g}", name, alpha, beta, rel));
    }
  }
  if (c.pass) {
    c.detail = fmt::format("40 pairs, 1e6+1 points: worst location {:.3g} cells, worst rel {:.3g}",
                           worst_loc, worst_rel);
  }
  return c;
}

// --- 4 ---------------------------------------------------------------------
Check residual_convergence() {
  Check c;
  std::string summary;
  for (const auto& [alpha, beta] : {std::pair{1.5, 0.25}, {1.75, 0.5}, {2.0, 0.0}, {2.0, 1.0}}) {
    const ProblemSpec p(alpha, beta, 0.0, 1.0);
    double previous = INFINITY;
    std::string seq;
    ResidualReport last{};
    for (std::size_t n : {128u, 256u, 512u, 1024u}) {
      const Grid g(0.0, 1.0, n);
      const GridFunction h = GridFunction::constant(g, 1.0);
      const GridFunction u = solve_linear(p, h);
      last = residual_check(u, p, h);
      const double r = last.interior_residual_sup;
      // The exact solution lies in the span the corrected rule integrates
      // exactly, so once the residual reaches the rounding floor of the
      // difference quotient it cannot decrease further.
      const double floor = testing_support::second_difference_floor(n, 1.0, u.sup_norm());
      c.require(r <= previous || r <= floor,
                fmt::format("({},{}) n={} residual {:.3g} > previous {:.3g} and floor {:.3g}", alpha,
                            beta, n, r, previous, floor));
      seq += fmt::format("{}{:.2g}", seq.empty() ? "" : ",", r);
      previous = r;
    }
    c.require(previous < 1e-2, fmt::format("({},{}) finest residual {:.3g}", alpha, beta, previous));
    c.require(last.bc_left == 0.0, fmt::format("({},{}) bc_left {:.3g}", alpha, beta, last.bc_left));
    c.require(last.bc_right < 1e-2, fmt::format("({},{}) bc_right {:.3g}", alpha, beta, last.bc_right));
    // h = e^t is not reproduced exactly, so there the decrease is strict.
    double smooth_prev = INFINITY;
    std::string smooth_seq;
    for (std::size_t n : {128u, 256u, 512u, 1024u}) {
      const Grid g(0.0, 1.0, n);
      const GridFunction h = GridFunction::sample(g, [](double t) { return std::exp(t); });
      const double r = residual_check(solve_linear(p, h), p, h).interior_residual_sup;
      c.require(r < smooth_prev, fmt::format("({},{}) h=e^t n={} residual {:.3g} not below {:.3g}",
                                             alpha, beta, n, r, smooth_prev));
      smooth_seq += fmt::format("{}{:.2g}", smooth_seq.empty() ? "" : ",", r);
      smooth_prev = r;
    }
    summary += fmt::format("{}({},{}): h=1 [{}] bc_r={:.2g}; h=e^t [{}]", summary.empty() ? "" : " | ",
                           alpha, beta, seq, last.bc_right, smooth_seq);
  }
  if (c.pass) c.detail = "h=1 residuals sit at the rounding floor 64 eps n^2 " + summary;
  return c;
}

// --- 5 ---------------------------------------------------------------------
Check bound_soundness() {
  Check c;
  constexpr std::size_t n = 256;
  constexpr int samples = 200;
  std::mt19937 rng(4101);
  std::uniform_int_distribution<int> cells(1, 16);
  std::bernoulli_distribution sparse(0.3);
  double worst = 0.0;
  int not_converged = 0;
  const Grid g(0.0, 1.0, n);
  for (const auto& [alpha, beta] : alpha_beta_lattice()) {
    const ProblemSpec p(alpha, beta, 0.0, 1.0);
    const Eigen::MatrixXd w = greens_quadrature_weights(p, g);
    const double rhs = lyapunov_rhs(p);
    for (int k = 0; k < samples; ++k) {
      auto f = testing_support::random_piecewise_linear(rng, 0.0, 1.0, 0.0, 1.0,
                                                        static_cast<std::size_t>(cells(rng)));
      // Some samples keep only a few knots alive to get localized weights.
      if (sparse(rng)) {
        for (double& knot : f.knots) knot *= sparse(rng) ? 1.0 : 0.0;
        f.knots[f.knots.size() / 2] += 1.0;
      }
      const GridFunction q0 = GridFunction::sample(g, f);
      const double scale = rhs / qplus_integral(q0);
      std::vector<double> v(q0.values().begin(), q0.values().end());
      for (double& x : v) x *= scale;
      const SpectralReport r = spectral_radius(discretize_operator(w, GridFunction(g, v)), 1e-10, 20000);
      if (!r.converged) ++not_converged;
      worst = std::max(worst, r.radius);
      c.require(r.radius < 1.0 + 5e-3,
                fmt::format("({},{}) sample {} radius {:.6f}", alpha, beta, k, r.radius));
    }
  }
  c.require(not_converged == 0, fmt::format("{} power iterations did not converge", not_converged));

  const ProblemSpec classical(2.0, 0.0, 0.0, 1.0);
  const Grid anchor_grid(0.0, 1.0, n);
  const SpectralReport anchor = spectral_radius(
      discretize_operator(classical, GridFunction::constant(anchor_grid, 4.0)), 1e-12, 20000);
  c.require(std::abs(anchor.radius - 4.0 / (pi * pi)) <= 5e-3,
            fmt::format("anchor radius {:.6f} vs 4/pi^2", anchor.radius));
  if (c.pass) {
    c.detail = fmt::format("8000 samples, max radius {:.6f}; q=4 anchor {:.6f} (4/pi^2={:.6f})", worst,
                           anchor.radius, 4.0 / (pi * pi));
  }
  return c;
}

// --- 6 ---------------------------------------------------------------------
Check eigenvalue_anchors() {
  Check c;
  const Grid g(0.0, 1.0, 512);
  const SpectralReport dirichlet = spectral_radius(
      discretize_operator(ProblemSpec(2.0, 0.0, 0.0, 1.0), GridFunction::constant(g, pi * pi)), 1e-12,
      20000);
  const SpectralReport mixed = spectral_radius(
      discretize_operator(ProblemSpec(2.0, 1.0, 0.0, 1.0), GridFunction::constant(g, pi * pi / 4.0)),
      1e-12, 20000);
  c.require(dirichlet.converged && std::abs(dirichlet.radius - 1.0) <= 1e-3,
            fmt::format("q=pi^2 radius {:.8f}", dirichlet.radius));
  c.require(mixed.converged && std::abs(mixed.radius - 1.0) <= 1e-3,
            fmt::format("q=pi^2/4 radius {:.8f}", mixed.radius));
  if (c.pass) {
    c.detail = fmt::format("q=pi^2: {:.8f}, q=pi^2/4 (beta=1): {:.8f}", dirichlet.radius, mixed.radius);
  }
  return c;
}

// --- 7 ---------------------------------------------------------------------
Check contraction_behavior() {
  Check c;
  const ProblemSpec p(2.0, 0.0, 0.0, 1.0);
  const NonlinearProblem np(p, [](double, double u) { return std::sin(u) + 1.0; }, 1.0);
  const double tol = 1e-10;
  const PicardResult from_zero = picard_solve(np, 512, tol, 200);
  c.require(from_zero.converged, "Picard from 0 did not converge");
  c.require(std::abs(from_zero.predicted_contraction - 0.125) <= 1e-12,
            fmt::format("predicted {:.17g}", from_zero.predicted_contraction));
  double worst_ratio = 0.0;
  const auto& d = from_zero.sup_norm_deltas;
  for (std::size_t m = 1; m < d.size(); ++m) {
    // Ratios of deltas already at rounding level say nothing about the map.
    if (d[m - 1] <= 100.0 * std::numeric_limits<double>::epsilon()) break;
    worst_ratio = std::max(worst_ratio, d[m] / d[m - 1]);
  }
  c.require(worst_ratio <= 0.125 + 0.05, fmt::format("measured ratio {:.4f}", worst_ratio));

  std::mt19937 rng(77);
  const Grid& grid = from_zero.solution.grid();
  const GridFunction start = GridFunction::sample(
      grid, testing_support::random_piecewise_linear(rng, 0.0, 1.0, -5.0, 5.0));
  const PicardResult from_random = picard_solve(np, 512, tol, 200, start);
  c.require(from_random.converged, "Picard from random start did not converge");
  const double gap = sup_distance(from_zero.solution, from_random.solution);
  c.require(gap <= 10.0 * tol, fmt::format("initial iterates disagree by {:.3g}", gap));
  if (c.pass) {
    c.detail = fmt::format("{} iterations, max ratio {:.4f} <= 0.175, start gap {:.3g}",
                           from_zero.iterations, worst_ratio, gap);
  }
  return c;
}

// --- 8 ---------------------------------------------------------------------
Check power_rule_conventions() {
  Check c;
  std::mt19937 rng(808);
  std::uniform_real_distribution<double> nu1(-0.999, 3.0);
  std::uniform_real_distribution<double> tt(0.01, 5.0);
  int nonzero = 0;
  for (int k = 0; k < 100; ++k) {
    const double v1 = nu1(rng);
    const double t = tt(rng);
    for (int m : {1, 2, 3}) {
      if (power_rule_derivative(v1, v1 + m, t, 0.0) != 0.0) ++nonzero;
    }
  }
  c.require(nonzero == 0, fmt::format("{} of 300 not exactly zero", nonzero));

  // u is piecewise linear with kinks on nodes and u(a) != 0, so I^nu1 u
  // carries the (t-a)^nu1 and (t-a)^(nu1+1) terms; the outer integral uses
  // the rule corrected for exactly those.
  std::mt19937 frng(5);
  const auto f = testing_support::random_piecewise_linear(frng, 0.0, 1.0, -1.0, 1.0);
  const GridFunction u = GridFunction::sample(Grid(0.0, 1.0, 1024), f);
  double worst = 0.0;
  for (double n1 : {0.3, 0.7, 1.2}) {
    for (double n2 : {0.3, 0.7, 1.2}) {
      const double exps[] = {n1, n1 + 1.0};
      const double err = sup_distance(frac_integral(frac_integral(u, FractionalOrder(n1)), FractionalOrder(n2), exps),
                                      frac_integral(u, FractionalOrder(n1 + n2)));
      worst = std::max(worst, err);
      c.require(err < 1e-3, fmt::format("semigroup ({},{}) error {:.3g}", n1, n2, err));
    }
  }
  if (c.pass) c.detail = fmt::format("300/300 exact zeros; semigroup max error {:.3g} at n=1024", worst);
  return c;
}

// --- 9 ---------------------------------------------------------------------
Check expression_parser() {
  Check c;
  const std::vector<std::pair<const char*, double>> table = {
      {"2+3*4", 14.0}, {"2^3^2", 512.0}, {"-2^2", -4.0}, {"8/4/2", 1.0}, {"8-4-2", 2.0}, {"2^-1", 0.5}};
  for (const auto& [text, expected] : table) {
    const double got = eval(parse(text), 0.0);
    c.require(got == expected, fmt::format("\"{}\" -> {} (want {})", text, got, expected));
  }
  std::mt19937 rng(99);
  int failures = 0;
  for (int k = 0; k < 1000; ++k) {
    const Expr e = testing_support::random_tree(rng, 6);
    try {
      if (!(parse(to_string(e)) == e)) ++failures;
    } catch (const std::exception&) {
      ++failures;
    }
  }
  c.require(failures == 0, fmt::format("{} of 1000 round trips failed", failures));
  if (c.pass) c.detail = fmt::format("{} precedence cases, 1000/1000 round trips", table.size());
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"classical reduction", classical_reduction},
      {"fractional Lyapunov reduction", beta_zero_reduction},
      {"closed form vs brute force", closed_form_vs_brute_force},
      {"Green's residual convergence", residual_convergence},
      {"nonexistence bound soundness", bound_soundness},
      {"eigenvalue anchors", eigenvalue_anchors},
      {"contraction behavior", contraction_behavior},
      {"power-rule conventions", power_rule_conventions},
      {"expression parser", expression_parser},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!result.pass) ++failed;
    fmt::print("{} {}. {} ({:.2f} s): {}\n", result.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
               secs, result.detail);
  }
  fmt::print("{}/{} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed;
}
