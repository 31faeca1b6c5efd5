#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace themetruss::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kBadFlags = 2,
  kBadInput = 3,
  kGuardExceeded = 4,
  kBadConfig = 5,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace themetruss::cli
