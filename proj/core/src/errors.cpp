#include "wordsimplex/errors.hpp"

namespace wordsimplex {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kMalformedInput: return "malformed_input";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kEmptyInput: return "empty_input";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kNumeric: return "numeric_error";
    case ErrorCode::kDegenerateTriangle: return "degenerate_triangle";
    case ErrorCode::kNumericDegeneracy: return "numeric_degeneracy";
    case ErrorCode::kIo: return "io_error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, std::string module, const std::string& message)
    : std::runtime_error(message), code_(code), module_(std::move(module)) {}

}  // namespace wordsimplex
