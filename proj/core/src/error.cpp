#include "atlas/error.hpp"

namespace atlas {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotConnected: return "NotConnected";
    case ErrorCode::kBadInvolution: return "BadInvolution";
    case ErrorCode::kBadRotation: return "BadRotation";
    case ErrorCode::kNonPositiveConductance: return "NonPositiveConductance";
    case ErrorCode::kRootAbsorbing: return "RootAbsorbing";
    case ErrorCode::kEmptyAbsorbing: return "EmptyAbsorbing";
    case ErrorCode::kInvalidVertex: return "InvalidVertex";
    case ErrorCode::kNotPlanar: return "NotPlanar";
    case ErrorCode::kNotTriangulation: return "NotTriangulation";
    case ErrorCode::kSizeCap: return "SizeCap";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kEmptyTarget: return "EmptyTarget";
    case ErrorCode::kOverlap: return "Overlap";
    case ErrorCode::kDegenerateTarget: return "DegenerateTarget";
    case ErrorCode::kInconsistentFlow: return "InconsistentFlow";
    case ErrorCode::kZeroEta: return "ZeroEta";
    case ErrorCode::kLayoutInconsistency: return "LayoutInconsistency";
    case ErrorCode::kStepCap: return "StepCap";
    case ErrorCode::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::kNoAnchor: return "NoAnchor";
    case ErrorCode::kOrderMismatch: return "OrderMismatch";
    case ErrorCode::kDegenerateCrossing: return "DegenerateCrossing";
    case ErrorCode::kTangentSegment: return "TangentSegment";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what, std::optional<double> residual)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code),
      residual_(residual) {}

}  // namespace atlas
