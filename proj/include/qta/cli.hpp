#pragma once

#include <iosfwd>

namespace qta::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitInvariantViolation = 4;

/// Parses and runs one subcommand (classify, round, iterate, teleport,
/// sweep). Results go to `out` (CSV by default, 17-significant-digit
/// floats), diagnostics to `err`. Returns one of the exit codes above.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace qta::cli
