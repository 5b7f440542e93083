#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lsr {

enum class Errc {
  DimensionTooSmall,
  ExponentOutOfRange,
  NonPhysicalD,
  InvalidParameter,
  ProfileNotPositive,
  CenterAtOrigin,
  IndexOutOfRange,
  NotOnBoundary,
  DegenerateAxis,
  CoincidentPoints,
  ToleranceNotMet,
  SymmetryMismatch,
  DivergentIntegral,
  DomainError,
  FitIllConditioned,
  InadmissibleRegime,
  OutsideBox,
  BudgetExhausted,
  EmptyGrid,
  NoInteriorCriticalPoint,
  NotAdmissible,
  ConfigError,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace lsr
