#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wordsimplex {

enum class ErrorCode {
  kMalformedInput,
  kDimensionMismatch,
  kParse,
  kEmptyInput,
  kInvalidArgument,
  kNumeric,
  kDegenerateTriangle,
  kNumericDegeneracy,
  kIo,
};

/// Stable snake_case name used in CLI error lines, e.g. "dimension_mismatch".
std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library. `module()` names the pipeline stage
/// (embedding_io, linalg_pca, ...) so callers can surface context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

}  // namespace wordsimplex
