#pragma once

#include <iosfwd>

namespace tnd::cli {

inline constexpr int kOk = 0;
inline constexpr int kCycle = 2;
inline constexpr int kBudget = 3;
inline constexpr int kVerifyFailed = 4;
inline constexpr int kUsage = 64;

/// The `tnd` command line. Returns the process exit code.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tnd::cli
