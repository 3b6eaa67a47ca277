#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kurepa::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Largest `to` accepted by `seq` without --mod. Bell numbers use a smaller
/// guard because the exact binomial recurrence is quadratic in big-integer adds.
inline constexpr unsigned long kExactSeqMax = 10000;
inline constexpr unsigned long kExactBellMax = 1000;

/// Parses argv (argv[0] is the program name) and runs one subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kurepa::cli
