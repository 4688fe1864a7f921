#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace boxdual::cli {

/// Process exit codes. A converged solve exits 0 whatever the subcommand;
/// failed `check` invariants exit 1.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitInfeasible = 2,
  kExitInputError = 3,
  kExitNotConverged = 4,
};

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out` unless --output names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace boxdual::cli
