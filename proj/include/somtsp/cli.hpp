#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace somtsp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInternal = 2;

/// Runs one subcommand: generate, solve, oracle, evaluate, tune, plot.
/// `args` excludes the program name. Returns the process exit code.
int command_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace somtsp::cli
