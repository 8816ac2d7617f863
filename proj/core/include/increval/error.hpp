#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace increval {

enum class ErrorCode {
  kInvalidTrace,
  kInvalidArgument,
  kNonMonotoneEmission,
  kLengthMismatch,
  kMissingGold,
  kEmptyInput,
  kParseError,
  kSchemaError,
  kIo,
  // External endpoint failures.
  kBrokenPipe,
  kMalformedResponse,
  kIdMismatch,
  kLabelCountMismatch,
  kTimeout,
  kRemoteError,  // endpoint answered with an "error" field
};

std::string_view to_string(ErrorCode code);

// Location attached to an error. Steps and lines are 1-based; field is a
// JSON-pointer-like path ("/steps/2").
struct ErrorContext {
  std::optional<std::size_t> step;
  std::optional<std::size_t> line;
  std::string field;
  std::string sequence_id;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, ErrorContext context = {});

  ErrorCode code() const noexcept { return code_; }
  const ErrorContext& context() const noexcept { return context_; }
  // Message without the location prefix.
  const std::string& detail() const noexcept { return detail_; }

  // Returns a copy with missing context fields filled from `outer`.
  Error with_context(const ErrorContext& outer) const;

 private:
  ErrorCode code_;
  std::string detail_;
  ErrorContext context_;
};

}  // namespace increval
