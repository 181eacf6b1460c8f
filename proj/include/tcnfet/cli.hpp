#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tcnfet {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitUsage = 2,
    kExitSimulation = 3,
};

/// Runs one command line (without the program name) and returns the exit code.
/// Reports go to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcnfet
