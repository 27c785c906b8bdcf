#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ewfs::cli {

/// Exit codes of the ewfs tool.
enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 1,
  kSolverError = 2,
};

/// Runs one ewfs invocation; `args` excludes the program name. Results go to
/// `out` (or the file named by --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ewfs::cli
