#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace poissonlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args excludes the program name). CSV goes to the
/// `--out` path, or to `out` when the path is "-". Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Drops the leading `#` manifest line of a CSV document.
std::string csv_body(const std::string& document);

}  // namespace poissonlab::cli
