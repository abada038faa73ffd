#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace signrank {

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kExhausted = 3 };

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace signrank
