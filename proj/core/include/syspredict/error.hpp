#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace syspredict {

/// Every failure the library reports. The category string is stable and is
/// what the CLI prints as a machine-readable prefix.
enum class ErrorCode {
  // structure
  kEmptyPaths,
  kIndexOutOfRange,
  kNonMinimalPath,
  kUncoveredComponent,
  kLengthMismatch,
  kTooManyTerms,
  // copula
  kOutOfUnitInterval,
  kIncompleteAssignment,
  kUnsupportedOrder,
  kBoundaryTooClose,
  kInvalidParameter,
  // marginal
  kNegativeTime,
  kOutOfRange,
  // distortion
  kDimensionMismatch,
  kRegionError,
  // predictor
  kDegenerateDenominator,
  kZeroAlpha,
  kNotInvertible,
  kQuadratureFailure,
  kInvalidOrder,
  kWrongCase,
  // montecarlo
  kUnsupportedCopula,
  kInsufficientBinCount,
  kInvalidK,
  // qr
  kDegenerateDesign,
  // cli / io
  kConfig,
  kIo,
};

std::string_view error_category(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_category(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view category() const noexcept { return error_category(code_); }

 private:
  ErrorCode code_;
};

}  // namespace syspredict
