#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace reslab {

// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSolver = 1;
inline constexpr int kExitHypothesis = 2;
inline constexpr int kExitUsage = 64;

// Dispatches `resonances | halfbound | limit-matrix | circle | scatter |
// converge`. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace reslab
