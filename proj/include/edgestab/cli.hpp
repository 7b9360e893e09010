#pragma once

#include <ostream>

namespace edgestab {

// Exit codes: 0 stable, 1 unstable, 2 degenerate, 3 inconclusive, 64 input error, 65 internal error.
inline constexpr int kExitStable = 0;
inline constexpr int kExitUnstable = 1;
inline constexpr int kExitDegenerate = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitInput = 64;
inline constexpr int kExitInternal = 65;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace edgestab
