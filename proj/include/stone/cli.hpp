#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stone {

/// Exit statuses of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,       // IO, parse and usage errors
  kExitFailed = 2,      // validation, parameters, certification
  kExitResource = 3,    // clique cap, oracle size
};

/// Runs the command line `args` (args[0] is the program name), writing
/// results to `out` (or to -o files) and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stone
