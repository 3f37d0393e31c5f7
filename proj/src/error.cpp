#include "bkvg/error.hpp"

namespace bkvg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonIntegrable: return "NonIntegrable";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonIntegrableHint: return "NonIntegrableHint";
    case ErrorCode::InvalidGamma: return "InvalidGamma";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotInKernel: return "NotInKernel";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::WrongFamily: return "WrongFamily";
    case ErrorCode::SolveFailure: return "SolveFailure";
    case ErrorCode::UncertifiedConstants: return "UncertifiedConstants";
    case ErrorCode::NotAccretive: return "NotAccretive";
    case ErrorCode::NotClosable: return "NotClosable";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::FamilyMismatch: return "FamilyMismatch";
    case ErrorCode::EigenFailure: return "EigenFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace bkvg
