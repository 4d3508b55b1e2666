#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thnorm {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // verification failed, or an internal error
  kExitUsage = 2,    // bad flags, unparsable or invalid input
  kExitBudget = 3,   // budget exceeded; a partial report was written
};

/// Runs the command line `args` (without the program name) in-process.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thnorm
