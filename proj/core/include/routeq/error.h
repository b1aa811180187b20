#ifndef ROUTEQ_ERROR_H_
#define ROUTEQ_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace routeq {

enum class ErrorCode {
  kInvalidNetwork,
  kInvalidInstance,
  kPathExplosion,
  kEmptySubnetwork,
  kInfeasibleFlow,
  kNegativeFlow,
  kNonMonotoneAnchors,
  kMissingEdge,
  kNoConvergence,
  kZeroDemand,
  kNotHomogeneous,
  kNotStrictlyHeterogeneous,
  kNotFound,
  kClassifiedConforming,
  kConstructionFailed,
  kVerificationFailed,
  kParseError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this type; callers switch on
// code() rather than on the message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace routeq

#endif  // ROUTEQ_ERROR_H_
