#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lforge::cli {

enum ExitCode : int { kPass = 0, kUsage = 1, kNegative = 2, kRefused = 3, kObstruction = 4 };

/// Runs the command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lforge::cli
