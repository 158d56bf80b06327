#include "cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

namespace fraclyap::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Value {
  std::string text;
  bool quoted = false;
};

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

// Strips a trailing comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

Value parse_value(std::string_view raw, std::size_t line) {
  if (raw.empty()) fail(line, "missing value");
  if (raw.front() != '"') return {std::string(raw), false};
  if (raw.size() < 2 || raw.back() != '"') fail(line, "unterminated string");
  std::string out;
  for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
    if (raw[i] == '\\' && i + 2 < raw.size()) {
      ++i;
      out += raw[i] == 'n' ? '\n' : raw[i];
    } else {
      out += raw[i];
    }
  }
  return {out, true};
}

double as_number(const Value& v, std::string_view key, std::size_t line) {
  double x = 0.0;
  const char* begin = v.text.data();
  const char* end = begin + v.text.size();
  if (!v.quoted && !v.text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, x);
  if (v.quoted || ec != std::errc() || ptr != end) {
    fail(line, "key '" + std::string(key) + "' expects a number, got '" + v.text + "'");
  }
  return x;
}

std::size_t as_count(const Value& v, std::string_view key, std::size_t line) {
  const double x = as_number(v, key, line);
  if (x < 0.0 || x != static_cast<double>(static_cast<std::size_t>(x))) {
    fail(line, "key '" + std::string(key) + "' expects a nonnegative integer");
  }
  return static_cast<std::size_t>(x);
}

bool as_bool(const Value& v, std::string_view key, std::size_t line) {
  if (!v.quoted && v.text == "true") return true;
  if (!v.quoted && v.text == "false") return false;
  fail(line, "key '" + std::string(key) + "' expects true or false");
}

std::string as_string(const Value& v, std::string_view key, std::size_t line) {
  if (!v.quoted) fail(line, "key '" + std::string(key) + "' expects a quoted string");
  return v.text;
}

}  // namespace

std::optional<OutputFormat> parse_format(std::string_view name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  return std::nullopt;
}

void apply_config_text(std::string_view text, RunConfig& cfg) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    line = trim(strip_comment(line));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const Value v = parse_value(trim(line.substr(eq + 1)), line_no);

    if (key == "alpha") {
      cfg.alpha = as_number(v, key, line_no);
    } else if (key == "beta") {
      cfg.beta = as_number(v, key, line_no);
    } else if (key == "a") {
      cfg.a = as_number(v, key, line_no);
    } else if (key == "b") {
      cfg.b = as_number(v, key, line_no);
    } else if (key == "n" || key == "grid_n") {
      cfg.grid_n = as_count(v, key, line_no);
    } else if (key == "q") {
      cfg.q_expr = as_string(v, key, line_no);
    } else if (key == "f") {
      cfg.f_expr = as_string(v, key, line_no);
    } else if (key == "K" || key == "lipschitz_k") {
      cfg.lipschitz_k = as_number(v, key, line_no);
    } else if (key == "k" || key == "boundary_k") {
      cfg.boundary_k = as_number(v, key, line_no);
    } else if (key == "tol") {
      cfg.tol = as_number(v, key, line_no);
    } else if (key == "max_iter") {
      cfg.max_iter = static_cast<int>(as_count(v, key, line_no));
    } else if (key == "out" || key == "output") {
      cfg.output = as_string(v, key, line_no);
    } else if (key == "format") {
      const auto f = parse_format(as_string(v, key, line_no));
      if (!f) fail(line_no, "format must be \"json\" or \"csv\"");
      cfg.format = f;
    } else if (key == "scan") {
      cfg.scan = as_bool(v, key, line_no);
    } else if (key == "t_samples") {
      cfg.t_samples = as_count(v, key, line_no);
    } else if (key == "s_samples") {
      cfg.s_samples = as_count(v, key, line_no);
    } else if (key == "scan_family") {
      cfg.scan_family = as_string(v, key, line_no);
    } else if (key == "bump_center") {
      cfg.bump_center = as_number(v, key, line_no);
    } else if (key == "bump_width") {
      cfg.bump_width = as_number(v, key, line_no);
    } else if (key == "scan_samples") {
      cfg.scan_samples = as_count(v, key, line_no);
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(buf.str(), cfg);
}

ProblemSpec problem_spec(const RunConfig& cfg) {
  if (!cfg.alpha) throw ConfigError("alpha is required");
  return ProblemSpec(*cfg.alpha, cfg.beta, cfg.a, cfg.b);
}

void validate(const RunConfig& cfg) {
  if (cfg.grid_n < 16) throw ConfigError("n must be >= 16");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be > 0");
  if (cfg.max_iter <= 0) throw ConfigError("max_iter must be > 0");
  if (cfg.t_samples < 2 || cfg.s_samples < 2) {
    throw ConfigError("t_samples and s_samples must be >= 2");
  }
  if (cfg.scan_family != "constant" && cfg.scan_family != "bump") {
    throw ConfigError("scan_family must be \"constant\" or \"bump\"");
  }
}

}  // namespace fraclyap::cli
