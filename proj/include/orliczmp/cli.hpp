#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orliczmp::cli {

/// Runs one subcommand (indices, conjugate, norm, check, rim, solve).
/// args excludes the program name. Returns 0 on success, 1 on errors and
/// 2 when the hypothesis check finds a failing assumption or no theorem
/// inequality holds.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orliczmp::cli
