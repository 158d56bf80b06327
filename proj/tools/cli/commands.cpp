#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "cli/json_writer.hpp"
#include "fraclyap/expr.hpp"
#include "fraclyap/lyapunov.hpp"
#include "fraclyap/solver.hpp"
#include "fraclyap/spectral.hpp"

namespace fraclyap::cli {
namespace {

constexpr const char* kSchemaPrefix = "fraclyap/v1/";

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> log = [] {
    auto l = spdlog::stderr_logger_st("fraclyap");
    l->set_pattern("[%l] %v");
    spdlog::level::level_enum level = spdlog::level::err;
    if (const char* env = std::getenv("FRACLYAP_LOG")) {
      const std::string v(env);
      if (v == "info") level = spdlog::level::info;
      if (v == "debug") level = spdlog::level::debug;
    }
    l->set_level(level);
    return l;
  }();
  return log;
}

Json problem_json(const ProblemSpec& p) {
  Json j;
  j["alpha"] = p.alpha();
  j["beta"] = p.beta();
  j["a"] = p.a();
  j["b"] = p.b();
  return j;
}

Json extremal_json(const ExtremalPoint& e) {
  Json j;
  j["location"] = e.location;
  j["value"] = e.value;
  return j;
}

std::string csv_number(double x) { return format_double(x); }

// Writes the primary artifact to cfg.output (or `out`) and the sidecar next
// to cfg.output when one is given.
void emit(const RunConfig& cfg, OutputFormat default_format, const std::string& json_text,
          const std::string& csv_text, std::ostream& out) {
  const OutputFormat format = cfg.format.value_or(default_format);
  const std::string& primary = format == OutputFormat::Json ? json_text : csv_text;
  if (!cfg.output) {
    out << primary;
    return;
  }
  const std::filesystem::path path(*cfg.output);
  auto write_file = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write '" + p.string() + "'");
    f << text;
  };
  write_file(path, primary);
  if (format == OutputFormat::Json && !csv_text.empty()) {
    write_file(std::filesystem::path(path).replace_extension(".csv"), csv_text);
  } else if (format == OutputFormat::Csv) {
    write_file(std::filesystem::path(path).replace_extension(".json"), json_text);
  }
  logger()->info("wrote {}", path.string());
}

const std::string& require_expr(const std::optional<std::string>& e, const char* name) {
  if (!e) throw ConfigError(std::string("missing expression '") + name + "'");
  return *e;
}

GridFunction sample_q(const Expr& q, const Grid& grid) {
  if (q.references(Variable::U)) throw ConfigError("q may only depend on t");
  return GridFunction::sample(grid, [&](double t) { return eval(q, t); });
}

}  // namespace

int cmd_bound(const RunConfig& cfg, std::ostream& out) {
  const ProblemSpec p = problem_spec(cfg);
  const std::string& source = require_expr(cfg.q_expr, "q");
  const Grid grid(p.a(), p.b(), cfg.grid_n);
  const GridFunction q = sample_q(parse(source), grid);
  const BoundReport r = nonexistence_verdict(p, q);

  Json j;
  j["schema"] = std::string(kSchemaPrefix) + "bound";
  j["problem"] = problem_json(p);
  j["grid_n"] = cfg.grid_n;
  j["q"] = source;
  j["rhs"] = r.rhs;
  j["q_plus_integral"] = r.q_plus_integral;
  j["verdict"] = std::string(to_string(r.verdict));
  j["s_star"] = extremal_json(r.s_star);
  j["t_star"] = extremal_json(r.t_star);

  std::ostringstream csv;
  csv << "rhs,q_plus_integral,verdict,s_star,s_star_value,t_star,t_star_value\n"
      << csv_number(r.rhs) << ',' << csv_number(r.q_plus_integral) << ',' << to_string(r.verdict)
      << ',' << csv_number(r.s_star.location) << ',' << csv_number(r.s_star.value) << ','
      << csv_number(r.t_star.location) << ',' << csv_number(r.t_star.value) << '\n';
  emit(cfg, OutputFormat::Json, dump_json(j), csv.str(), out);
  return r.verdict == Verdict::NoNontrivialSolution ? kExitOk : kExitInconclusive;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const ProblemSpec p = problem_spec(cfg);
  const std::string& source = require_expr(cfg.f_expr, "f");
  if (!cfg.lipschitz_k) throw ConfigError("missing Lipschitz constant 'K'");
  const Expr f = parse(source);
  const NonlinearProblem np(
      p, [f](double t, double u) { return eval(f, t, u); }, *cfg.lipschitz_k, cfg.boundary_k);

  const double threshold = contraction_threshold(p, np.lipschitz_k);
  const PicardResult result = picard_solve(np, cfg.grid_n, cfg.tol, cfg.max_iter);
  const bool guaranteed = result.predicted_contraction < 1.0;
  if (!guaranteed) {
    logger()->info("b - a = {} is not below the contraction threshold {}; running unguaranteed",
                   p.length(), threshold);
  }

  // The residual of u - lift measures D^beta u(b) - k directly.
  const Grid& grid = result.solution.grid();
  const GridFunction lift = homogeneous_lift(p, np.boundary_k, grid);
  std::vector<double> shifted(grid.size());
  std::vector<double> source_values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    shifted[i] = result.solution[i] - lift[i];
    source_values[i] = np.f(grid.node(i), result.solution[i]);
  }
  const ResidualReport res = residual_check(GridFunction(grid, std::move(shifted)), p,
                                            GridFunction(grid, std::move(source_values)));

  Json j;
  j["schema"] = std::string(kSchemaPrefix) + "solve";
  j["problem"] = problem_json(p);
  j["grid_n"] = cfg.grid_n;
  j["f"] = source;
  j["lipschitz_k"] = np.lipschitz_k;
  j["boundary_k"] = np.boundary_k;
  j["tol"] = cfg.tol;
  j["max_iter"] = cfg.max_iter;
  j["interval_length"] = p.length();
  j["contraction_threshold"] = threshold;
  j["predicted_contraction"] = result.predicted_contraction;
  j["contraction_guaranteed"] = guaranteed;
  j["converged"] = result.converged;
  j["iterations"] = result.iterations;
  j["sup_norm_deltas"] = result.sup_norm_deltas;
  Json r;
  r["interior_residual_sup"] = res.interior_residual_sup;
  r["bc_left"] = res.bc_left;
  r["bc_right"] = res.bc_right;
  r["grid_n"] = res.grid_n;
  j["residuals"] = r;

  std::ostringstream csv;
  csv << "t,u\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << csv_number(grid.node(i)) << ',' << csv_number(result.solution[i]) << '\n';
  }
  emit(cfg, OutputFormat::Json, dump_json(j), csv.str(), out);
  // Without a contraction the fixed point found (if any) is not certified.
  return result.converged && guaranteed ? kExitOk : kExitNotConverged;
}

int cmd_greens(const RunConfig& cfg, std::ostream& out) {
  const ProblemSpec p = problem_spec(cfg);
  const std::size_t nt = cfg.t_samples;
  const std::size_t ns = cfg.s_samples;
  auto node = [&](std::size_t count, std::size_t i) {
    if (i + 1 == count) return p.b();
    return p.a() + p.length() * (static_cast<double>(i) / static_cast<double>(count - 1));
  };

  std::ostringstream csv;
  csv << "t,s,G\n";
  for (std::size_t i = 0; i < nt; ++i) {
    const double t = node(nt, i);
    for (std::size_t k = 0; k < ns; ++k) {
      const double s = node(ns, k);
      csv << csv_number(t) << ',' << csv_number(s) << ',' << csv_number(greens_value(t, s, p))
          << '\n';
    }
  }

  const ExtremalPoint diag = diag_argmax(p);
  const ExtremalPoint row = row_integral_max(p);
  Json j;
  j["schema"] = std::string(kSchemaPrefix) + "greens";
  j["problem"] = problem_json(p);
  j["t_samples"] = nt;
  j["s_samples"] = ns;
  j["s_star"] = extremal_json(diag);
  j["t_star"] = extremal_json(row);
  j["diag_max"] = diag.value;
  j["row_integral_max"] = row.value;
  j["lyapunov_rhs"] = lyapunov_rhs(p);
  emit(cfg, OutputFormat::Csv, dump_json(j), csv.str(), out);
  return kExitOk;
}

int cmd_spectral(const RunConfig& cfg, std::ostream& out) {
  const ProblemSpec p = problem_spec(cfg);
  const std::string& source = require_expr(cfg.q_expr, "q");
  if (cfg.format == OutputFormat::Csv && !cfg.scan) {
    throw ConfigError("csv output of 'spectral' is the scan table; add --scan");
  }
  const Grid grid(p.a(), p.b(), cfg.grid_n);
  const GridFunction q = sample_q(parse(source), grid);
  for (double v : q.values()) {
    if (v < 0.0) {
      logger()->info("q takes negative values; the Perron-root interpretation needs q >= 0");
      break;
    }
  }
  const SpectralReport r =
      spectral_radius(discretize_operator(p, q, source), cfg.tol, cfg.max_iter);

  Json j;
  j["schema"] = std::string(kSchemaPrefix) + "spectral";
  j["problem"] = problem_json(p);
  j["grid_n"] = cfg.grid_n;
  j["q"] = source;
  j["q_plus_integral"] = qplus_integral(q);
  j["lyapunov_rhs"] = lyapunov_rhs(p);
  j["radius"] = r.radius;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["residual"] = r.residual;
  j["tol"] = cfg.tol;

  std::string csv;
  bool scan_converged = true;
  if (cfg.scan) {
    const ScanFamily family =
        cfg.scan_family == "bump"
            ? ScanFamily::bump_at(cfg.bump_center.value_or(diag_argmax(p).location),
                                  cfg.bump_width.value_or(0.25 * p.length()))
            : ScanFamily::constant();
    const std::vector<ScanRow> rows =
        sharpness_scan(p, family, cfg.scan_samples, cfg.grid_n, cfg.tol, cfg.max_iter);
    Json scan = Json::array();
    for (const ScanRow& row : rows) {
      Json e;
      e["parameter"] = row.parameter;
      e["scaled_integral"] = row.scaled_integral;
      e["radius"] = row.radius;
      e["converged"] = row.converged;
      scan.push_back(e);
      scan_converged = scan_converged && row.converged;
    }
    j["scan_family"] = cfg.scan_family;
    j["scan"] = scan;
    std::ostringstream s;
    write_scan_csv(s, rows);
    csv = s.str();
  }
  emit(cfg, OutputFormat::Json, dump_json(j), csv, out);
  return r.converged && scan_converged ? kExitOk : kExitSpectralNotConverged;
}

namespace {

struct Overrides {
  std::optional<std::string> config;
  std::optional<double> alpha, beta, a, b, lipschitz_k, boundary_k, tol;
  std::optional<std::size_t> grid_n, t_samples, s_samples;
  std::optional<int> max_iter;
  std::optional<std::string> q, f, out, format;
  bool scan = false;
};

void add_common_options(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config, "TOML-style key = value configuration file");
  app.add_option("--alpha", o.alpha, "derivative order alpha in (1, 2]");
  app.add_option("--beta", o.beta, "boundary derivative order beta in [0, alpha - 1]");
  app.add_option("--a", o.a, "left endpoint");
  app.add_option("--b", o.b, "right endpoint");
  app.add_option("--n", o.grid_n, "number of grid subintervals (>= 16)");
  app.add_option("--q", o.q, "coefficient q(t)");
  app.add_option("--f", o.f, "nonlinearity f(t, u)");
  app.add_option("--K", o.lipschitz_k, "Lipschitz constant of f in u");
  app.add_option("--k", o.boundary_k, "boundary value D^beta u(b) = k");
  app.add_option("--tol", o.tol, "iteration tolerance");
  app.add_option("--max-iter", o.max_iter, "iteration cap");
  app.add_option("--out", o.out, "output path");
  app.add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--scan", o.scan, "spectral: also run the sharpness scan");
  app.add_option("--t-samples", o.t_samples, "greens: number of t samples (>= 2)");
  app.add_option("--s-samples", o.s_samples, "greens: number of s samples (>= 2)");
}

RunConfig resolve(const Overrides& o) {
  RunConfig cfg;
  if (o.config) apply_config_file(*o.config, cfg);
  if (o.alpha) cfg.alpha = *o.alpha;
  if (o.beta) cfg.beta = *o.beta;
  if (o.a) cfg.a = *o.a;
  if (o.b) cfg.b = *o.b;
  if (o.grid_n) cfg.grid_n = *o.grid_n;
  if (o.q) cfg.q_expr = *o.q;
  if (o.f) cfg.f_expr = *o.f;
  if (o.lipschitz_k) cfg.lipschitz_k = *o.lipschitz_k;
  if (o.boundary_k) cfg.boundary_k = *o.boundary_k;
  if (o.tol) cfg.tol = *o.tol;
  if (o.max_iter) cfg.max_iter = *o.max_iter;
  if (o.out) cfg.output = *o.out;
  if (o.format) cfg.format = parse_format(*o.format);
  if (o.scan) cfg.scan = true;
  if (o.t_samples) cfg.t_samples = *o.t_samples;
  if (o.s_samples) cfg.s_samples = *o.s_samples;
  validate(cfg);
  return cfg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lyapunov-type bounds and solvers for Riemann-Liouville boundary value problems",
               "fraclyap"};
  app.require_subcommand(1);
  Overrides o;
  using Command = int (*)(const RunConfig&, std::ostream&);
  const std::vector<std::pair<std::string, Command>> commands = {
      {"bound", &cmd_bound},
      {"solve", &cmd_solve},
      {"greens", &cmd_greens},
      {"spectral", &cmd_spectral},
  };
  const std::vector<std::string> descriptions = {
      "Lyapunov bound and nonexistence verdict for q(t)",
      "Picard iteration for D^alpha u + f(t, u) = 0",
      "Green's function samples and extremal values",
      "spectral radius of the integral operator with kernel G(t,s) q(s)",
  };
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, descriptions[i]);
    add_common_options(*sub, o);
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      const RunConfig cfg = resolve(o);
      logger()->debug("running '{}'", commands[i].first);
      return commands[i].second(cfg, out);
    } catch (const NoFiniteBoundError& e) {
      err << "error: " << e.what() << '\n';
      return kExitConfigError;
    } catch (const EvalError& e) {
      // Expressions that fail on the first sampling are input problems; a
      // failure inside the iteration is reported separately.
      err << "error: " << e.what() << '\n';
      return commands[i].first == "solve" ? kExitEvalError : kExitConfigError;
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << '\n';
      return kExitConfigError;
    } catch (const ParseError& e) {
      err << "error: " << e.what() << '\n';
      return kExitConfigError;
    } catch (const DomainError& e) {
      err << "error: " << e.what() << '\n';
      return kExitConfigError;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitRuntimeError;
    }
  }
  return kExitConfigError;
}

}  // namespace fraclyap::cli
