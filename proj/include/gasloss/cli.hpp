#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gasloss {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitNumericalFailure = 3,
  kExitCapabilityLimit = 4,
};

/// Runs the command-line interface; `args` excludes the program name.
/// Reports go to `out`, warnings and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gasloss
