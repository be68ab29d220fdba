#include "twistcoh/error.hpp"

namespace twistcoh {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kValidationError: return "VALIDATION_ERROR";
    case ErrorCode::kNonSmooth: return "NON_SMOOTH";
    case ErrorCode::kNotStabilized: return "NOT_STABILIZED";
    case ErrorCode::kNotAUnit: return "NOT_A_UNIT";
    case ErrorCode::kNotClosed: return "NOT_CLOSED";
    case ErrorCode::kDegenerationViolated: return "DEGENERATION_VIOLATED";
    case ErrorCode::kShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::kIncompatibleRing: return "INCOMPATIBLE_RING";
  }
  return "UNKNOWN";
}

}  // namespace twistcoh
