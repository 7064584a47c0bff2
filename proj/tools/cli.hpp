#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mlab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. Exit code 0 iff every
/// asserting check passed, 1 on verification failure, 2 on usage or spec
/// errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mlab::cli
