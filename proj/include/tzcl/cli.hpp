#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tzcl {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitMath = 3 };

/// Runs the command line `args` (args[0] is the program name).
/// Subcommands: kernel, recur, verify, gauge, rank. Returns an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tzcl
