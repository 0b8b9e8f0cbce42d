#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace repeatkit::cli {

/// Process exit codes. Stable across versions.
enum ExitCode : int {
    kExitOk = 0,
    kExitInfeasible = 2,
    kExitUsage = 64,
    kExitData = 65,
    kExitSoftware = 70,
    kExitOutput = 73,
};

/// Runs one command line (without the program name). The report goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace repeatkit::cli
