#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gazesynth::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Runs one command line (without the program name). Returns the process
/// exit status: 0 iff every requested output was written.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gazesynth::cli
