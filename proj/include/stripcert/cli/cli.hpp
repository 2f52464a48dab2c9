#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stripcert::cli {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUncertified = 3;

/// Runs one command line (without the program name) and writes the report to
/// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stripcert::cli
