#include "slb/error.hpp"

namespace slb {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NonPositiveRadius: return "NonPositiveRadius";
    case Errc::CurveNotSimple: return "CurveNotSimple";
    case Errc::BadNodeCount: return "BadNodeCount";
    case Errc::DegenerateTangent: return "DegenerateTangent";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::OutsideAnnulus: return "OutsideAnnulus";
    case Errc::NewtonDiverged: return "NewtonDiverged";
    case Errc::DegenerateEdge: return "DegenerateEdge";
    case Errc::NearBoundary: return "NearBoundary";
    case Errc::OriginNotInterior: return "OriginNotInterior";
    case Errc::CoincidentInteriorPoints: return "CoincidentInteriorPoints";
    case Errc::BranchUnresolved: return "BranchUnresolved";
    case Errc::WrongQuadrant: return "WrongQuadrant";
    case Errc::NotAnInteger: return "NotAnInteger";
    case Errc::AdjustmentPointMissing: return "AdjustmentPointMissing";
    case Errc::AdjustmentPointNotInterior: return "AdjustmentPointNotInterior";
    case Errc::NoHolomorphicSection: return "NoHolomorphicSection";
    case Errc::NotConformalMapCurve: return "NotConformalMapCurve";
    case Errc::TangentNotMeromorphic: return "TangentNotMeromorphic";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace slb
