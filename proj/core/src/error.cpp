#include "increval/error.hpp"

namespace increval {
namespace {

std::string format_message(ErrorCode code, const std::string& detail,
                           const ErrorContext& ctx) {
  std::string out(to_string(code));
  if (!ctx.sequence_id.empty()) out += " [sequence " + ctx.sequence_id + "]";
  if (ctx.line) out += " line " + std::to_string(*ctx.line);
  if (ctx.step) out += " step " + std::to_string(*ctx.step);
  if (!ctx.field.empty()) out += " field " + ctx.field;
  out += ": ";
  out += detail;
  return out;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidTrace: return "invalid trace";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kNonMonotoneEmission: return "non-monotone emission";
    case ErrorCode::kLengthMismatch: return "length mismatch";
    case ErrorCode::kMissingGold: return "missing gold";
    case ErrorCode::kEmptyInput: return "empty input";
    case ErrorCode::kParseError: return "parse error";
    case ErrorCode::kSchemaError: return "schema error";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kBrokenPipe: return "broken pipe";
    case ErrorCode::kMalformedResponse: return "malformed response";
    case ErrorCode::kIdMismatch: return "id mismatch";
    case ErrorCode::kLabelCountMismatch: return "label count mismatch";
    case ErrorCode::kTimeout: return "timeout";
    case ErrorCode::kRemoteError: return "remote error";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, const std::string& message, ErrorContext context)
    : std::runtime_error(format_message(code, message, context)),
      code_(code),
      detail_(message),
      context_(std::move(context)) {}

Error Error::with_context(const ErrorContext& outer) const {
  ErrorContext merged = context_;
  if (!merged.step) merged.step = outer.step;
  if (!merged.line) merged.line = outer.line;
  if (merged.field.empty()) merged.field = outer.field;
  if (merged.sequence_id.empty()) merged.sequence_id = outer.sequence_id;
  return Error(code_, detail_, std::move(merged));
}

}  // namespace increval
