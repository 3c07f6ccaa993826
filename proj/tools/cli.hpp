#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace degenkit::cli {

enum ExitCode { kOk = 0, kFalsified = 1, kInputError = 2 };

/// Runs the degenkit command line on `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace degenkit::cli
