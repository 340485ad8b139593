#pragma once

#include <iosfwd>

namespace signedmeso::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // I/O or validation error
inline constexpr int kUsage = 2;

/// Runs the command line. Results go to `out` unless --out is given;
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace signedmeso::cli
