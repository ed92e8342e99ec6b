#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kstress::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kViolated = 1;
inline constexpr int kInvalid = 2;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics and usage to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kstress::cli
