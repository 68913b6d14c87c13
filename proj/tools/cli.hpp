#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fg {

/// Process exit codes.
enum ExitCode : int {
  kComputed = 0,
  kAnswerNo = 1,  // predicate answered "no" under --strict
  kUsage = 2,     // usage error or invalid input
  kResourceLimit = 3,
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fg
