#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mtmorph::cli {

enum ExitCode : int { kSuccess = 0, kError = 1, kNoResult = 2 };

/// Runs the command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mtmorph::cli
