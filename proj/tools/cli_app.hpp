#pragma once

#include <covertrees/identities.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace covertrees::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;

/// Runs the command line `args` (args[0] is the program name). Human output
/// goes to `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const ClosedForms& closed = {});

/// Report as JSON; all integers are decimal strings.
std::string report_json(const VerificationReport& report, bool deterministic);

}  // namespace covertrees::cli
