#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unital::cli {

/// Runs the command line `args` (without the program name).  Exit codes:
/// 0 success, 1 a verification failed, 2 bad usage, 3 the rank engines disagree.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unital::cli
