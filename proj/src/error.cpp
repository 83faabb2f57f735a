#include "clag/error.hpp"

namespace clag {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::NotCanonical: return "NotCanonical";
    case ErrorCode::SizeGuard: return "SizeGuard";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DivisibilityViolated: return "DivisibilityViolated";
    case ErrorCode::NotAtInfinity: return "NotAtInfinity";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::BadChoices: return "BadChoices";
    case ErrorCode::AllEqual: return "AllEqual";
    case ErrorCode::WrongType: return "WrongType";
    case ErrorCode::GeometryMismatch: return "GeometryMismatch";
    case ErrorCode::NotDisjoint: return "NotDisjoint";
    case ErrorCode::NotContained: return "NotContained";
    case ErrorCode::NotLines: return "NotLines";
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::DimensionViolation: return "DimensionViolation";
    case ErrorCode::WrongCodimension: return "WrongCodimension";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::ScaleExceeded: return "ScaleExceeded";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace clag
