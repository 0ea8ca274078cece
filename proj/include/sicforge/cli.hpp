#pragma once

// `sic-forge` command-line front-end.
//
// Exit codes: 0 success / certified, 1 honest negative result, 2 usage or
// input error.

#include <iosfwd>
#include <string>
#include <vector>

namespace sicforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Threads for parallel restarts: hardware concurrency capped by the
/// SIC_FORGE_THREADS environment variable when set to a positive integer.
int thread_budget();

}  // namespace sicforge::cli
