#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lookahead::cli {

/// Exit codes.
inline constexpr int kOWins = 0;
inline constexpr int kError = 1;
inline constexpr int kIWins = 2;
inline constexpr int kXcheckFailed = 3;

/// Runs one command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace lookahead::cli
