#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mtbe {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_config = 2,       // bad flags, bad config file, unknown keys
  exit_input = 3,        // unreadable/malformed input or unwritable output
  exit_calibration = 4,  // bracketing failure or starvation
  exit_invalid = 5,      // estimate invalidated (censoring above 0.1%)
};

/// Runs the command-line tool in-process. `args` excludes the program name.
/// All ordinary output goes to `out`, diagnostics and progress to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Convenience wrapper around run_cli for a real main().
int cli_main(int argc, const char* const* argv);

}  // namespace mtbe
