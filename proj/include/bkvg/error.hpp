#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bkvg {

enum class ErrorCode {
  NonIntegrable,
  DomainViolation,
  NoConvergence,
  NonIntegrableHint,
  InvalidGamma,
  InvalidArgument,
  NotInKernel,
  WrongRegime,
  WrongFamily,
  SolveFailure,
  UncertifiedConstants,
  NotAccretive,
  NotClosable,
  NotApplicable,
  FamilyMismatch,
  EigenFailure,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bkvg
