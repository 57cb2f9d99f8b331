#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace capedu::cli {

/// Process exit codes.
enum ExitStatus : int {
    kSuccess = 0,
    kUsageError = 1,
    kScenarioError = 2,
    kNumericFailure = 3,
};

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace capedu::cli
