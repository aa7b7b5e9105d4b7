#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fa {

enum class ErrorCode {
  InvalidArgument,
  InvalidThreshold,
  InvalidCompromiseCount,
  InvalidProbability,
  DivisionByZero,
  RegimeError,
  PreconditionError,
  UnsupportedPf,
  SizeBound,
  NonTermination,
};

std::string_view error_name(ErrorCode code) noexcept;

// Every failure in the library surfaces as an Error carrying one of the codes
// above; the C layer maps the code onto fa_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fa
