#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ftap::cli {

enum ExitCode : int { kHolds = 0, kFails = 1, kInputError = 2, kInternal = 3 };

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace ftap::cli
