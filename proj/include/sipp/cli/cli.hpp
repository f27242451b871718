#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sipp::cli {

/// Exit codes: 0 success, 1 negative verdict, 2 input or usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitError = 2;

/// Runs the command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sipp::cli
