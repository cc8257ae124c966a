#pragma once

#include <ostream>

namespace coopmac {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitConfig = 2, kExitRuntime = 3 };

/// Parses argv (argv[0] is the program name) and runs one subcommand:
/// bounds, simulate, contour, reproduce or selftest.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Quick oracle and property checks; one PASS/FAIL line each. True if all pass.
bool run_selftest(std::ostream& out);

}  // namespace coopmac
