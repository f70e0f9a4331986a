#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace ahlab::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 1;  // bad input or a failed validation
inline constexpr int kNumeric = 2;  // a numerical kernel did not converge

/// Runs one subcommand. `args` excludes the program name. Results go to the
/// file named by --out, or to `out` when --out is absent.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ahlab::cli
