#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace boxslash {

/// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand (gen, layout, validate, solve, passes, hex,
/// selftest). args excludes the program name. Output goes to out as JSON
/// (DOT with gen --dot); diagnostics go to err.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace boxslash
