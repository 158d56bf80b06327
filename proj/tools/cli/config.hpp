#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "fraclyap/error.hpp"
#include "fraclyap/greens.hpp"

namespace fraclyap::cli {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { Json, Csv };

struct RunConfig {
  std::optional<double> alpha;
  double beta = 0.0;
  double a = 0.0;
  double b = 1.0;
  std::size_t grid_n = 512;
  std::optional<std::string> q_expr;
  std::optional<std::string> f_expr;
  std::optional<double> lipschitz_k;
  double boundary_k = 0.0;
  double tol = 1e-10;
  int max_iter = 200;
  std::optional<std::string> output;
  std::optional<OutputFormat> format;
  bool scan = false;
  std::size_t t_samples = 21;
  std::size_t s_samples = 21;
  std::string scan_family = "constant";
  std::optional<double> bump_center;
  std::optional<double> bump_width;
  std::size_t scan_samples = 6;
};

// Merges `key = value` lines into cfg. Values are numbers, booleans or
// double-quoted strings; '#' starts a comment. Unknown keys are errors.
void apply_config_text(std::string_view text, RunConfig& cfg);

void apply_config_file(const std::string& path, RunConfig& cfg);

// Problem geometry from the config; throws ConfigError if alpha is missing
// and DomainError / NoFiniteBoundError for out-of-range values.
ProblemSpec problem_spec(const RunConfig& cfg);

// Checks grid_n >= 16, tol > 0, max_iter > 0 and the sample counts.
void validate(const RunConfig& cfg);

std::optional<OutputFormat> parse_format(std::string_view name);

}  // namespace fraclyap::cli
