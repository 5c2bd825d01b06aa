#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace txpower::cli {

// Stable process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitData = 2,
    kExitExtrapolated = 3,  // only with --strict
    kExitNoAdmissible = 4,
};

/// Runs one command line (args[0] is the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace txpower::cli
