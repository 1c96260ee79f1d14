#pragma once

#include <iosfwd>

namespace tca::cli {

/// Exit codes shared by every command.
enum ExitCode : int {
  kSuccess = 0,     // connected / feasible / written
  kNegative = 1,    // not connected / infeasible / over budget
  kInputError = 2,  // unreadable or malformed input, bad flags
};

/// Runs the `tca` command line with the given arguments (argv[0] is the program name).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tca::cli
