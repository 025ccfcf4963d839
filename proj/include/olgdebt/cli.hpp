#pragma once

#include <iosfwd>

namespace olgdebt::cli {

enum ExitCode : int { kSuccess = 0, kDomainError = 1, kUsageError = 2 };

/// Entry point of the command-line front end. Results go to `out`,
/// diagnostics and the effective-config echo to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace olgdebt::cli
