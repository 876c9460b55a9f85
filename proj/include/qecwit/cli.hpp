#pragma once

#include <iosfwd>

namespace qecwit {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDisagreement = 2;

/// Entry point behind the `qecwit` executable. Reports go to `out`, usage and
/// validation errors to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qecwit
