#pragma once

#include <string>
#include <vector>

namespace reflect {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitUnknown = 2,
  kExitInvariant = 3,
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;  // stdout payload
  std::string err;  // diagnostics
};

// argv without the program name, e.g. {"compare", "p", "s"}.
CommandResult execute_command(const std::vector<std::string>& args);

}  // namespace reflect
