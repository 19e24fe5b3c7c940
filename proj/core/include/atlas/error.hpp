#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace atlas {

enum class ErrorCode {
  kNotConnected,
  kBadInvolution,
  kBadRotation,
  kNonPositiveConductance,
  kRootAbsorbing,
  kEmptyAbsorbing,
  kInvalidVertex,
  kNotPlanar,
  kNotTriangulation,
  kSizeCap,
  kInvalidArgument,
  kNonConvergence,
  kEmptyTarget,
  kOverlap,
  kDegenerateTarget,
  kInconsistentFlow,
  kZeroEta,
  kLayoutInconsistency,
  kStepCap,
  kDegenerateDenominator,
  kNoAnchor,
  kOrderMismatch,
  kDegenerateCrossing,
  kTangentSegment,
  kParse,
  kIo,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; the code carries the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<double> residual = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  // Set for kNonConvergence: the residual reached when the iteration stopped.
  std::optional<double> residual() const noexcept { return residual_; }

 private:
  ErrorCode code_;
  std::optional<double> residual_;
};

}  // namespace atlas
