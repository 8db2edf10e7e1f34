#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace localflow {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
/// No improving cut, a flow that is not full, or a certificate that fails.
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInternalError = 3;

/// args[0] is the program name. Subcommands: stats, improve, improve-exact,
/// flow, certify, seed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace localflow
