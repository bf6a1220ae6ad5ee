#pragma once

#include <ostream>
#include <span>
#include <string>

namespace mdi::cli {

/// Exit codes of the `mdi` command.
enum ExitCode : int {
  kOk = 0,
  kExpectedFailure = 1,  // e.g. an inconsistent conjunction
  kUsageError = 2,       // bad arguments or unparsable input
  kInternalError = 3,    // oracle mismatch or unexpected failure
};

/// Runs the command line `args` (args[0] is the program name), writing
/// results to `out` and diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace mdi::cli
