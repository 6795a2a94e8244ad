#pragma once

#include <string>
#include <vector>

namespace symprod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// Runs one command line (args[0] is the program name) and returns the exit
/// status.  Artifacts go to --out, summaries to standard output.
int run(const std::vector<std::string>& args);

}  // namespace symprod::cli
