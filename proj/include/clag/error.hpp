#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clag {

enum class ErrorCode {
  NotPrime,
  DegreeOutOfRange,
  DivisionByZero,
  DimensionOutOfRange,
  AmbientMismatch,
  NotCanonical,
  SizeGuard,
  LengthMismatch,
  DivisibilityViolated,
  NotAtInfinity,
  WrongDimension,
  BadChoices,
  AllEqual,
  WrongType,
  GeometryMismatch,
  NotDisjoint,
  NotContained,
  NotLines,
  NotSkew,
  DimensionViolation,
  WrongCodimension,
  EmptySet,
  ScaleExceeded,
  InvalidInput,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (CLI, Python bindings) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace clag
