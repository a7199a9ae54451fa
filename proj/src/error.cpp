#include "malevic/error.hpp"

#include <fmt/format.h>

namespace malevic {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kPlacementFailure: return "placement-failure";
    case ErrorCode::kExhaustedRetries: return "exhausted-retries";
    case ErrorCode::kDegenerateReference: return "degenerate-reference";
    case ErrorCode::kTie: return "tie";
    case ErrorCode::kNotInReference: return "object-not-in-reference";
    case ErrorCode::kEmptyRestriction: return "empty-restriction";
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kNoReferent: return "no-referent";
    case ErrorCode::kAmbiguousReferent: return "ambiguous-referent";
    case ErrorCode::kSchemaViolation: return "schema-violation";
    case ErrorCode::kIo: return "io-error";
  }
  return "unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return 2;
    case ErrorCode::kPlacementFailure:
    case ErrorCode::kExhaustedRetries: return 3;
    case ErrorCode::kDegenerateReference:
    case ErrorCode::kTie:
    case ErrorCode::kNotInReference:
    case ErrorCode::kEmptyRestriction: return 4;
    case ErrorCode::kParse:
    case ErrorCode::kNoReferent:
    case ErrorCode::kAmbiguousReferent: return 5;
    case ErrorCode::kSchemaViolation:
    case ErrorCode::kIo: return 6;
  }
  return 1;
}

ParseError::ParseError(std::size_t position, const std::string& message)
    : Error(ErrorCode::kParse, fmt::format("parse error at offset {}: {}", position, message)),
      position_(position) {}

SchemaError::SchemaError(std::size_t line, std::string field_path, const std::string& message)
    : Error(ErrorCode::kSchemaViolation,
            fmt::format("schema violation at line {}, field '{}': {}", line, field_path, message)),
      line_(line),
      field_path_(std::move(field_path)) {}

}  // namespace malevic
