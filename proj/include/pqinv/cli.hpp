#pragma once

#include <iosfwd>

namespace pqinv::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kSuiteFailed = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kNonexistent = 3;
inline constexpr int kNumerical = 4;
inline constexpr int kSpectral = 5;

/// Runs one command line; never throws. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pqinv::cli
