#ifndef AMBIENTKIT_CLI_HPP
#define AMBIENTKIT_CLI_HPP

#include <iosfwd>

namespace ambientkit {

enum ExitCode : int { kExitPass = 0, kExitFailure = 1, kExitUsage = 2 };

/// Parses argv, runs the command and writes its report to --out (or `out`).
/// Diagnostics go to `err`. Returns 0 when every verdict passes, 1 when a
/// mathematical check fails and 2 on usage or configuration errors.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ambientkit

#endif
