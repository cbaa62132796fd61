#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lupoly::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 1;
inline constexpr int kNumericalFailure = 2;
inline constexpr int kInvariantViolation = 3;

// Runs one command. `args` excludes the program name. The JSON report goes to
// `out` (or the --output file), diagnostics to `err`; `in` backs "--spectra -".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace lupoly::cli
