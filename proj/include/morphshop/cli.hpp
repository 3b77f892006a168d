#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace morphshop::cli {

enum ExitCode { kOk = 0, kValidationFailure = 1, kUsageError = 2 };

// Runs one CLI invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace morphshop::cli
