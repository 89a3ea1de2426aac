#pragma once

// Command-line front end: spectrum, verify and conjecture subcommands.

#include <ostream>
#include <string>
#include <vector>

namespace nearhol {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnsupported = 3;

/// Largest accepted --cutoff.
inline constexpr int kMaxCutoff = 16;

/// Runs the tool on `args` (without the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nearhol
