#pragma once

// Command-line front end: count, verify, selfdual, orbits.
// Exit codes: 0 pass, 1 mismatch, 2 usage, 3 resource guard.

#include <iosfwd>
#include <string>
#include <vector>

namespace mtwist {

inline constexpr int kExitPass = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mtwist
