#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flashcode::cli {

enum ExitCode : int {
  ok = 0,
  invalid_params = 1,
  bound_violation = 2,
  budget_exceeded = 3,
};

/// Runs one command line (without the program name). Subcommands: bounds,
/// oracle, simulate, trace. `in` feeds trace's write sequence.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace flashcode::cli
