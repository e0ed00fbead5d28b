#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hartogs {

inline constexpr std::string_view kToolName = "hartogs";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitPass = 0,
  kExitBreach = 1,
  kExitInput = 2,
  kExitInconclusive = 3,
};

// Runs one command; args excludes the program name. Reports go to out (or to --out),
// diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hartogs
