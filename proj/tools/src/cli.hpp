#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

namespace acflab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 1;
inline constexpr int kExitSolverFailure = 2;
inline constexpr int kExitCheckFailed = 3;

/// Inclusive "a..b", a single integer, or a comma list of either.
std::vector<int> parse_int_range(std::string_view text);

/// Comma-separated reals; each entry is a number or a multiple of pi such as
/// "pi", "pi/3", "2pi/3", "0.5*pi".
std::vector<double> parse_real_list(std::string_view text);

/// Parses argv and runs one subcommand. Returns one of the kExit codes;
/// diagnostics go to err as a single line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace acflab::cli
