#include "syspredict/error.hpp"

namespace syspredict {

std::string_view error_category(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kEmptyPaths: return "EmptyPaths";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNonMinimalPath: return "NonMinimalPath";
    case ErrorCode::kUncoveredComponent: return "UncoveredComponent";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kTooManyTerms: return "TooManyTerms";
    case ErrorCode::kOutOfUnitInterval: return "OutOfUnitInterval";
    case ErrorCode::kIncompleteAssignment: return "IncompleteAssignment";
    case ErrorCode::kUnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::kBoundaryTooClose: return "BoundaryTooClose";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kNegativeTime: return "NegativeTime";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kRegionError: return "RegionError";
    case ErrorCode::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::kZeroAlpha: return "ZeroAlpha";
    case ErrorCode::kNotInvertible: return "NotInvertible";
    case ErrorCode::kQuadratureFailure: return "QuadratureFailure";
    case ErrorCode::kInvalidOrder: return "InvalidOrder";
    case ErrorCode::kWrongCase: return "WrongCase";
    case ErrorCode::kUnsupportedCopula: return "UnsupportedCopula";
    case ErrorCode::kInsufficientBinCount: return "InsufficientBinCount";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kDegenerateDesign: return "DegenerateDesign";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace syspredict
