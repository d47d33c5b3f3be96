#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsplit {

inline constexpr const char* kToolVersion = "0.1.0";

/// Dispatches the qsplit subcommands. `argv` excludes the program name.
/// Returns 0 on success, 2 on malformed input, 3 on infeasible or
/// linearly-dependent verdicts requested as hard checks, 4 on internal
/// numerical failure. Results go to `out`, diagnostics to `err` with a
/// one-line machine-parsable prefix "error: <code>: <message>".
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace qsplit
