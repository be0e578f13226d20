#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fexray {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitRuntime = 3,
};

/// Entry point of the fexray tool; `args` excludes the program name.
/// Subcommands: render, generate-ball, generate-cylinder, error-map, info.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fexray
