#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace confsel::cli {

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;       // unreadable or malformed input file
inline constexpr int exit_usage = 2;       // bad flags or vertex names
inline constexpr int exit_negative = 3;    // `check`: set is not sufficient
inline constexpr int exit_divergence = 4;  // `replay`: transcript does not reproduce

// Runs one command line (args excludes the program name). Interactive
// sessions read answers from in.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace confsel::cli
