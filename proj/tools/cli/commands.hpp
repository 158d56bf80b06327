#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace fraclyap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitEvalError = 3;
inline constexpr int kExitInconclusive = 10;
inline constexpr int kExitNotConverged = 11;
inline constexpr int kExitSpectralNotConverged = 12;

// Each command writes its primary artifact (chosen by cfg.format) to
// cfg.output, or to `out` when no path is given. With a path, the sidecar
// artifact goes next to it with the other extension.
int cmd_bound(const RunConfig& cfg, std::ostream& out);
int cmd_solve(const RunConfig& cfg, std::ostream& out);
int cmd_greens(const RunConfig& cfg, std::ostream& out);
int cmd_spectral(const RunConfig& cfg, std::ostream& out);

// Full command line (args[0] is the program name). Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fraclyap::cli
