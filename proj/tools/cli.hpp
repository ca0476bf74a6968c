#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qigs::cli {

/// Parses argv (argv[0] is the program name) and runs one subcommand.
/// Returns the process exit code; diagnostics go to `err` as
/// `error: <kind>: <detail>`. `--out -` writes to `out`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace qigs::cli
