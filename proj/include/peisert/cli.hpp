#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace peisert::cli {

/// Exit codes: 0 success, 1 verification failure, 2 invalid parameters.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kInvalid = 2;

/// Runs one command line (args[0] is the program name). Results go to `out` unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace peisert::cli
