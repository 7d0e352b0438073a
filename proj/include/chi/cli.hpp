#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chi::cli {

/// Parses argv, runs one subcommand and prints the JSON report to `out` and a
/// one-line human summary to `err`. Returns the process exit code:
/// 0 ok, 1 usage, 2 domain/consistency, 3 resource guard.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chi::cli
