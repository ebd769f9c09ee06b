#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subord::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalidInput = 2;

/// Runs one command line (args excludes the program name). Human-readable output goes
/// to out, diagnostics to err; JSON reports are written to the --out path when given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Thread cap from SUBORD_THREADS (0 when unset or unparsable).
unsigned threads_from_env();

} // namespace subord::cli
