#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kurtord::cli {

enum ExitCode { kHolds = 0, kFails = 1, kUndecided = 2, kUsage = 3 };

/// Entry point of the command-line tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kurtord::cli
