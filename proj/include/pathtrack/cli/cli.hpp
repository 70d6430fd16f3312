#pragma once

#include <iosfwd>

namespace pathtrack::cli {

enum ExitCode : int { Ok = 0, TrackingFailed = 1, UsageError = 2 };

/// Entry point of the pathtrack command. Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pathtrack::cli
