#include "lsr/error.hpp"

namespace lsr {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::ExponentOutOfRange: return "ExponentOutOfRange";
    case Errc::NonPhysicalD: return "NonPhysicalD";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::ProfileNotPositive: return "ProfileNotPositive";
    case Errc::CenterAtOrigin: return "CenterAtOrigin";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NotOnBoundary: return "NotOnBoundary";
    case Errc::DegenerateAxis: return "DegenerateAxis";
    case Errc::CoincidentPoints: return "CoincidentPoints";
    case Errc::ToleranceNotMet: return "ToleranceNotMet";
    case Errc::SymmetryMismatch: return "SymmetryMismatch";
    case Errc::DivergentIntegral: return "DivergentIntegral";
    case Errc::DomainError: return "DomainError";
    case Errc::FitIllConditioned: return "FitIllConditioned";
    case Errc::InadmissibleRegime: return "InadmissibleRegime";
    case Errc::OutsideBox: return "OutsideBox";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::EmptyGrid: return "EmptyGrid";
    case Errc::NoInteriorCriticalPoint: return "NoInteriorCriticalPoint";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace lsr
