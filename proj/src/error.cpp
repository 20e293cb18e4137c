#include "mbounds/error.hpp"

namespace mbounds {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kMissingSpot: return "MissingSpot";
    case ErrorCode::kMissingDiscountFactor: return "MissingDiscountFactor";
    case ErrorCode::kNegativeValue: return "NegativeValue";
    case ErrorCode::kConflictingDuplicate: return "ConflictingDuplicate";
    case ErrorCode::kUnknownAsset: return "UnknownAsset";
    case ErrorCode::kInvalidDistribution: return "InvalidDistribution";
    case ErrorCode::kInvalidPsi: return "InvalidPsi";
    case ErrorCode::kMeanMismatch: return "MeanMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kArbitragePresent: return "ArbitragePresent";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kSupportBoundTooSmall: return "SupportBoundTooSmall";
    case ErrorCode::kInfeasibleDespiteCheck: return "InfeasibleDespiteCheck";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kPathBudgetExceeded: return "PathBudgetExceeded";
    case ErrorCode::kNodeBudgetExceeded: return "NodeBudgetExceeded";
    case ErrorCode::kDimensionLimitExceeded: return "DimensionLimitExceeded";
    case ErrorCode::kUsage: return "Usage";
  }
  return "Unknown";
}

}  // namespace mbounds
