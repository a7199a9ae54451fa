#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace malevic {

enum class ErrorCode {
  kInvalidArgument,
  kPlacementFailure,
  kExhaustedRetries,
  kDegenerateReference,
  kTie,
  kNotInReference,
  kEmptyRestriction,
  kParse,
  kNoReferent,
  kAmbiguousReferent,
  kSchemaViolation,
  kIo,
};

const char* to_string(ErrorCode code);

// Process exit code for an error family; used by the CLI.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  // `position` is the zero-based character offset of the offending token.
  ParseError(std::size_t position, const std::string& message);

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class SchemaError : public Error {
 public:
  SchemaError(std::size_t line, std::string field_path, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  const std::string& field_path() const noexcept { return field_path_; }

 private:
  std::size_t line_;
  std::string field_path_;
};

}  // namespace malevic
