#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tdq {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,
  kExitDomain = 2,
  kExitViolation = 3,
  kExitIo = 4,
};

/// Runs `tdq <command> [subcommand] [options]`; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tdq
