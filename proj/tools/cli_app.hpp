#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jetbeta::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitInconsistency = 3;
inline constexpr int kExitProbeFailure = 4;

inline constexpr const char *kToolVersion = "0.1.0";

/// Runs the command line (without the program name) and returns the exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace jetbeta::cli
