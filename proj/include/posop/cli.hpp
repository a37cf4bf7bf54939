#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace posop::cli {

enum ExitCode : int {
  ok = 0,
  falsified = 1,
  unknown = 2,
  usage = 64,
  parse = 65,
};

/// Runs the command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One reproduced scenario with its golden comparisons.
struct ReproCase {
  std::string scenario;
  bool ok = true;
  std::vector<std::string> mismatches;
  std::vector<std::string> values;
};

std::vector<ReproCase> run_repro();

}  // namespace posop::cli
