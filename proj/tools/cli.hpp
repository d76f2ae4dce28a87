#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace anosov::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kNumericError = 2, kCheckFailed = 3 };

/// Runs one subcommand. args excludes the program name. Results go to `out`
/// unless a file is named; usage and error messages go to `err`.
int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anosov::cli
