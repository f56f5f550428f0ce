#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entrobust::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kInputError = 2;

/// Runs one command line. `args` excludes the program name. Input states are
/// read from the path given on the command line, or from `in` when it is
/// omitted or "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace entrobust::cli
