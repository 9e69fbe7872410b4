#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rjm {

/// Exit codes: 0 certified or success, 1 not certified or inconclusive,
/// 2 usage or input error.
enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitUsage = 2 };

/// Runs one verb. `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rjm
