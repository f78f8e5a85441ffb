#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "crg/error.hpp"

namespace crg::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,      // bad flags or unparsable function spec
  kExitNumeric = 2,    // overflow, zero hit, non-convergence ...
  kExitCertificate = 3 // audit or certificate failure
};

/// Exit status for a library error code.
int exit_code_for(crg::ErrorCode code) noexcept;

/// Runs one command line (args excludes the program name). Artifacts without
/// an --out path go to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crg::cli
