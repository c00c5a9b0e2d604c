#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cevian {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitEnvironment = 3,
};

/// Runs the command line `args` (without the program name). Human output
/// goes to `out`, diagnostics and progress to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cevian
