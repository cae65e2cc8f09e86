#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqstab {

enum class ErrorCode {
  OmegaViolation,
  IllConditioned,
  DimensionMismatch,
  NoConvergence,
  StepUnderflow,
  PoorFit,
  IndexOutOfRange,
  GrowthCollision,
  NonTermination,
  UnwrapFailure,
  GapViolation,
  PlanInfeasible,
  MissingPowerMap,
  NonIntegral,
  BadFusion,
  PatternViolation,
  ConfigError,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code);

// Every domain failure carries a code; what() starts with the code's name so
// CLI messages and logs can be grepped ("OmegaViolation: ...").
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace eqstab
