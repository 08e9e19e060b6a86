#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zetareg::cli {

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUser = 2;
inline constexpr int kExitDivergent = 3;

/// Runs the command line `args` (without the program name). Output goes to
/// `out`, diagnostics to `err`. ZETAREG_TERMS, when set, replaces the
/// default of --terms.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zetareg::cli
