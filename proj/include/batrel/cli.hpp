#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace batrel {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitFile = 2,
  kExitCapacity = 3,
};

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out`; diagnostics (one line) go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace batrel
