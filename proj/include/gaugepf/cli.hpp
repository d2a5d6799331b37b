#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gaugepf::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvariantFailure = 1,
  kNonConvergence = 2,
  kInputError = 3,
};

/// Runs one `gaugepf` command. `args` excludes the program name. The JSON
/// report goes to `out` (and to --json if given); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gaugepf::cli
