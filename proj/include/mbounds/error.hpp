#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mbounds {

/// Stable error codes surfaced by every module and by the CLI reports.
enum class ErrorCode {
  kInvalidInput,
  kMissingSpot,
  kMissingDiscountFactor,
  kNegativeValue,
  kConflictingDuplicate,
  kUnknownAsset,
  kInvalidDistribution,
  kInvalidPsi,
  kMeanMismatch,
  kEmptyInput,
  kArbitragePresent,
  kNumericalFailure,
  kSupportBoundTooSmall,
  kInfeasibleDespiteCheck,
  kInfeasible,
  kPathBudgetExceeded,
  kNodeBudgetExceeded,
  kDimensionLimitExceeded,
  kUsage,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mbounds
