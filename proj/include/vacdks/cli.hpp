#pragma once

#include <iosfwd>

namespace vacdks {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

// Entry point of the `vacdks` tool: subcommands generate, solve, bound and
// bench. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vacdks
