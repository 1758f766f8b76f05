#pragma once

#include <iosfwd>

namespace gbake::cli {

/// Exit codes of the gbake tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the test suites. Subcommands:
/// bake, render, seams, info, gen. Errors are reported as one line on `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace gbake::cli
