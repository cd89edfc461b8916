#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gatedist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitUsage = 64;

/// Runs one subcommand. `args` excludes the program name. The JSON result
/// goes to `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gatedist::cli
