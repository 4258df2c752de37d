#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jetbeta {

enum class ErrorCode {
  LeadingOfZero,
  UnknownBuiltin,
  IoError,
  ParseError,
  ValidationError,
  NegativeExponent,
  PreconditionOrder,
  InvalidArgument,
  EngineInconsistency,
  ComposeNonzeroConstant,
  PrecisionExhausted,
  NotTriangular,
  NotInImage,
  PreconditionK,
};

std::string_view error_code_name(ErrorCode code);

/// Exception carrying a machine-readable code. The message is for humans.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace jetbeta
