#pragma once

#include <ostream>

namespace langeval::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // load, validation or domain error
inline constexpr int kUsage = 2;

// Runs the command line in-process. All output goes to `out` and `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace langeval::cli
