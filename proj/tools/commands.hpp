#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clag::cli {

/// Exit codes: 0 pass, 1 a mathematical check failed, 2 usage or input error.
enum Exit : int { Pass = 0, MathFailure = 1, UsageError = 2 };

/// Parses and runs one command line. Reports go to `out` (or the --out file),
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clag::cli
