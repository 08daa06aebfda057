#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tfab {

inline constexpr const char* kToolVersion = "1.0.0";

// Exit codes.
inline constexpr int kExitAffirmative = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;

// Runs one CLI invocation. args excludes the program name. JSON goes to out,
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tfab
