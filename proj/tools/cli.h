// The wardmip command-line front end, as a library so tests can drive it.

#ifndef WARDMIP_TOOLS_CLI_H_
#define WARDMIP_TOOLS_CLI_H_

#include <ostream>

namespace wardmip::cli {

// Process exit codes. Each outcome maps to exactly one code.
enum ExitCode : int {
  kOk = 0,          // optimal, valid, or file written
  kUsage = 1,       // bad arguments, unreadable or malformed input
  kInfeasible = 2,  // proven infeasible
  kLimit = 3,       // node or time limit reached before optimality
  kViolations = 4,  // roster breaks at least one rule
  kInternal = 5,    // numerical failure or other solver fault
};

// Runs one subcommand. Normal output goes to `out`, diagnostics to `err`.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wardmip::cli

#endif  // WARDMIP_TOOLS_CLI_H_
