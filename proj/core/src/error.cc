#include "routeq/error.h"

namespace routeq {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidNetwork:
      return "InvalidNetwork";
    case ErrorCode::kInvalidInstance:
      return "InvalidInstance";
    case ErrorCode::kPathExplosion:
      return "PathExplosion";
    case ErrorCode::kEmptySubnetwork:
      return "EmptySubnetwork";
    case ErrorCode::kInfeasibleFlow:
      return "InfeasibleFlow";
    case ErrorCode::kNegativeFlow:
      return "NegativeFlow";
    case ErrorCode::kNonMonotoneAnchors:
      return "NonMonotoneAnchors";
    case ErrorCode::kMissingEdge:
      return "MissingEdge";
    case ErrorCode::kNoConvergence:
      return "NoConvergence";
    case ErrorCode::kZeroDemand:
      return "ZeroDemand";
    case ErrorCode::kNotHomogeneous:
      return "NotHomogeneous";
    case ErrorCode::kNotStrictlyHeterogeneous:
      return "NotStrictlyHeterogeneous";
    case ErrorCode::kNotFound:
      return "NotFound";
    case ErrorCode::kClassifiedConforming:
      return "ClassifiedConforming";
    case ErrorCode::kConstructionFailed:
      return "ConstructionFailed";
    case ErrorCode::kVerificationFailed:
      return "VerificationFailed";
    case ErrorCode::kParseError:
      return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace routeq
