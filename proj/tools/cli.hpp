#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curvecross::cli {

/// Process exit codes; a stable contract for scripts and CI.
enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kToleranceFailure = 2,
  kIoError = 3,
};

/// Runs the curvecross command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "A..B" or a single integer "A" into an inclusive range.
std::pair<unsigned, unsigned> parse_range(const std::string& text);

/// Worker default: $CURVECROSS_THREADS when set to a positive integer,
/// otherwise the hardware concurrency.
unsigned default_workers();

}  // namespace curvecross::cli
