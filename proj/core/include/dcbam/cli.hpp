#pragma once

#include <string>
#include <vector>

namespace dcbam::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;  // empty unless the command succeeded
  std::string err;
};

/// Runs one command. `args` excludes the program name, e.g.
/// {"rank", "gridstix.dcbam.json", "--json"}. Never touches the process
/// streams; the caller prints `out` / `err`.
CommandResult run(const std::vector<std::string>& args);

}  // namespace dcbam::cli
