#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and returns the process exit code:
//   0  success
//   1  verification mismatch (a defect in the library)
//   2  usage or input error, including budget refusals

#include <ostream>
#include <string>
#include <vector>

namespace nilzeta::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilzeta::cli
