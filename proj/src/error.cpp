#include "jetbeta/error.hpp"

namespace jetbeta {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::LeadingOfZero: return "LEADING_OF_ZERO";
  case ErrorCode::UnknownBuiltin: return "UNKNOWN_BUILTIN";
  case ErrorCode::IoError: return "IO_ERROR";
  case ErrorCode::ParseError: return "PARSE_ERROR";
  case ErrorCode::ValidationError: return "VALIDATION_ERROR";
  case ErrorCode::NegativeExponent: return "NEGATIVE_EXPONENT";
  case ErrorCode::PreconditionOrder: return "PRECONDITION_ORDER";
  case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  case ErrorCode::EngineInconsistency: return "ENGINE_INCONSISTENCY";
  case ErrorCode::ComposeNonzeroConstant: return "COMPOSE_NONZERO_CONSTANT";
  case ErrorCode::PrecisionExhausted: return "PRECISION_EXHAUSTED";
  case ErrorCode::NotTriangular: return "NOT_TRIANGULAR";
  case ErrorCode::NotInImage: return "NOT_IN_IMAGE";
  case ErrorCode::PreconditionK: return "PRECONDITION_K";
  }
  return "UNKNOWN";
}

} // namespace jetbeta
