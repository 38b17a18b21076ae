#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace resonance::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,
  kExitValidation = 2,
  kExitEigensolver = 3,
};

/// Entry point of the `resonance` tool. Reports go to `out` (or to the files
/// named by flags), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace resonance::cli
