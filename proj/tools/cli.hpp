#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ct2::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 1; ///< validation or parse error
inline constexpr int kFailed = 2;  ///< audit or verification failure

/// Runs one command line (without the program name).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace ct2::cli
