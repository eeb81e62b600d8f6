#pragma once

#include <ostream>

namespace cgkit::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIterationCap = 2;
inline constexpr int kExitLineSearchFailure = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitDataFormat = 65;
inline constexpr int kExitIo = 74;

/// Entry point shared by the `cgkit` binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cgkit::cli
