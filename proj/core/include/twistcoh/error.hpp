#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twistcoh {

// Stable machine-readable codes surfaced by the CLI.
enum class ErrorCode {
  kParseError,
  kValidationError,
  kNonSmooth,
  kNotStabilized,
  kNotAUnit,
  kNotClosed,
  kDegenerationViolated,
  kShapeMismatch,
  kIncompatibleRing,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  std::string_view code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace twistcoh
