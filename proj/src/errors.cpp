#include "guardgrid/errors.hpp"

namespace gg {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kNotSimple: return "NotSimple";
    case ErrorCode::kNonPositiveCoordinates: return "NonPositiveCoordinates";
    case ErrorCode::kDuplicateVertex: return "DuplicateVertex";
    case ErrorCode::kCollinearTripleConsecutive: return "CollinearTripleConsecutive";
    case ErrorCode::kTooFewVertices: return "TooFewVertices";
    case ErrorCode::kPointOutsidePolygon: return "PointOutsidePolygon";
    case ErrorCode::kIdenticalDirection: return "IdenticalDirection";
    case ErrorCode::kDegenerateCone: return "DegenerateCone";
    case ErrorCode::kNoGridPointNearby: return "NoGridPointNearby";
    case ErrorCode::kInputGuardOutsidePolygon: return "InputGuardOutsidePolygon";
    case ErrorCode::kInfeasibleWitness: return "InfeasibleWitness";
    case ErrorCode::kCombinatoricsBudgetExceeded: return "CombinatoricsBudgetExceeded";
    case ErrorCode::kGenerationBudgetExceeded: return "GenerationBudgetExceeded";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kRoundLimitExceeded: return "RoundLimitExceeded";
  }
  return "Unknown";
}

}  // namespace gg
