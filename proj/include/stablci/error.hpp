#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stablci {

enum class ErrorCode {
  kRingMismatch,
  kArityMismatch,
  kNonSquare,
  kNotExactDivision,
  kGenericPositiveDim,
  kNoSmooth,
  kNotZeroDim,
  kShapeFailed,
  kDegenerate,
  kOnBoundary,
  kSingular,
  kNoConvergence,
  kInadmissible,
  kOriginRoot,
  kZeroGradient,
  kSingularTransform,
  kNonFinite,
  kParse,
  kUndeclaredIdentifier,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

/// Exception carrying a machine-readable code. Every failure raised by the
/// library goes through this type so the CLI can map codes to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stablci
