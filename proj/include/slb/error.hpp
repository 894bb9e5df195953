#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slb {

enum class Errc {
  InvalidArgument,
  NonPositiveRadius,
  CurveNotSimple,
  BadNodeCount,
  DegenerateTangent,
  NoConvergence,
  OutsideAnnulus,
  NewtonDiverged,
  DegenerateEdge,
  NearBoundary,
  OriginNotInterior,
  CoincidentInteriorPoints,
  BranchUnresolved,
  WrongQuadrant,
  NotAnInteger,
  AdjustmentPointMissing,
  AdjustmentPointNotInterior,
  NoHolomorphicSection,
  NotConformalMapCurve,
  TangentNotMeromorphic,
  RankDeficient,
  ParseError,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure in the library is reported as an `slb::Error` carrying a
/// stable code; the CLI maps codes onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace slb
