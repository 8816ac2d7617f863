#include "increval/types.hpp"

#include <numeric>

#include "increval/error.hpp"

namespace increval {

std::string_view to_string(TaskKind task) {
  return task == TaskKind::kTagging ? "tagging" : "classification";
}

TaskKind parse_task_kind(std::string_view text) {
  if (text == "tagging") return TaskKind::kTagging;
  if (text == "classification") return TaskKind::kClassification;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown task '" + std::string(text) +
                  "' (expected tagging or classification)");
}

std::string_view to_string(LabelScheme scheme) {
  return scheme == LabelScheme::kBio ? "bio" : "plain";
}

LabelScheme parse_label_scheme(std::string_view text) {
  if (text == "bio" || text == "BIO") return LabelScheme::kBio;
  if (text == "plain" || text == "Plain") return LabelScheme::kPlain;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown label scheme '" + std::string(text) + "'");
}

bool is_bio_label(std::string_view label) {
  if (label == "O") return true;
  return label.size() > 2 && (label[0] == 'B' || label[0] == 'I') &&
         label[1] == '-';
}

Ratio::Ratio(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "ratio requires num >= 0 and den > 0");
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
  __extension__ using Wide = __int128;
  const Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  const Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const Ratio& r) {
  return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

std::string ValidationResult::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    if (v.step > 0) out += "step " + std::to_string(v.step) + ": ";
    out += v.reason;
  }
  return out;
}

ValidationResult validate_trace(const IncrementalTrace& trace) {
  ValidationResult result;
  auto add = [&](std::size_t step, std::string reason) {
    result.violations.push_back({step, std::move(reason)});
  };

  const std::size_t n = trace.tokens.size();
  if (n == 0) add(0, "token sequence is empty");
  if (trace.steps.size() != n) {
    add(0, "expected " + std::to_string(n) + " steps, found " +
               std::to_string(trace.steps.size()));
  }
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const std::size_t t = i + 1;
    const std::size_t expected =
        trace.task == TaskKind::kTagging ? t : std::size_t{1};
    const std::size_t found = trace.steps[i].size();
    if (found != expected) {
      add(t, "expected " + std::to_string(expected) + " labels, found " +
                 std::to_string(found));
    }
  }
  if (trace.gold) {
    const std::size_t expected =
        trace.task == TaskKind::kTagging ? n : std::size_t{1};
    if (trace.gold->size() != expected) {
      add(0, "gold has " + std::to_string(trace.gold->size()) +
                 " labels, expected " + std::to_string(expected));
    }
  }
  return result;
}

void require_valid(const IncrementalTrace& trace) {
  const ValidationResult result = validate_trace(trace);
  if (result.ok()) return;
  const Violation& first = result.violations.front();
  ErrorContext ctx;
  ctx.sequence_id = trace.sequence_id;
  if (first.step > 0) ctx.step = first.step;
  throw Error(ErrorCode::kInvalidTrace, result.summary(), std::move(ctx));
}

}  // namespace increval
