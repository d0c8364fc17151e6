#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bcnoise::cli {

/// Exit codes: 0 success, 1 runtime failure, 2 flag or validation error.
enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

/// Entry point behind the `bcnoise` executable. `args` excludes the program
/// name. Subcommands: run, sweep, gen-net, peaks.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bcnoise::cli
