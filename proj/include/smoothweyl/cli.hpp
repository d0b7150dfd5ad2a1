#pragma once

// Command-line front end. Every subcommand builds a Report; the exit code is
// 0 when the requested checks pass, 1 when one fails and 2 on bad input.

#include <iosfwd>
#include <string>
#include <vector>

namespace smoothweyl {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smoothweyl
