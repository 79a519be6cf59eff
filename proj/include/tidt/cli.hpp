#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tidt {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotConverged = 2;

/// Entry point of the `tidt` tool. `args` excludes the program name.
/// Returns the process exit code; diagnostics go to `err` as single lines.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tidt
