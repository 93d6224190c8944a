#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace demogdp::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1; // domain, format and I/O errors
inline constexpr int exit_usage = 2;

/// Runs one command line (without the program name). Summary lines go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace demogdp::cli
