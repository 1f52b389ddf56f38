#pragma once

#include <iosfwd>

namespace treepack::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInfeasible = 1,
    kUsage = 2,
    kInternal = 3,
};

// Runs the command line tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace treepack::cli
