#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tsub::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kError = 1;     ///< bad flags, unreadable input, violated preconditions
inline constexpr int kNotFound = 2;  ///< structured failure, invalid witness, or no subdivision

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace tsub::cli
