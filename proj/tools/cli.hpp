#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace despeckle::cli {

/// Exit codes: 0 success, 1 domain or runtime error, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace despeckle::cli
