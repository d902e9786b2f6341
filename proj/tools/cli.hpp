#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace collapse::cli {

/// Exit status contract of every subcommand.
enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace collapse::cli
