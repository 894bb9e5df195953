#pragma once

#include <iosfwd>

#include "slb/error.hpp"

namespace slb::cli {

// Process exit statuses.
enum ExitCode : int {
  kOk = 0,
  kCurveNotSimple = 1,
  kParseError = 2,  // unreadable curve file, malformed JSON or bad command line
  kNearBoundary = 3,
  kBranchUnresolved = 4,
  kIncompatibleGeometry = 5,  // NotConformalMapCurve, TangentNotMeromorphic
  kCheckFailed = 6,           // a reported discrepancy exceeded the tolerance
  kOtherError = 7,
};

int exit_code(Errc code) noexcept;

/// Runs one CLI invocation, writing results to out and diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slb::cli
