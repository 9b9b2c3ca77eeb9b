#pragma once

#include <iosfwd>

namespace heun::cli {

/// Exit codes: 0 pass, 1 pass with warnings, 2 domain error, 3 internal
/// consistency error.
enum ExitCode : int { kOk = 0, kWarning = 1, kDomain = 2, kConsistency = 3 };

/// Entry point for the `heun` tool, usable in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace heun::cli
