#pragma once

// Command-line front end. run_cli takes the arguments after the program name
// and returns the process exit code:
//   0 success, 1 verification failure, 2 input error, 3 precondition error.
// Reports go to `out`; diagnostics and timing go to `err`.

#include <iosfwd>
#include <string>
#include <vector>

namespace derivkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitPrecondition = 3;

/// The library version embedded in every report.
const char* library_version();

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace derivkit
