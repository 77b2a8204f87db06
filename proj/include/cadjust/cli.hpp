#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cadjust::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,
  kOutOfScope = 2,
  kInputError = 3,
};

/// Runs one `cadjust` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cadjust::cli
