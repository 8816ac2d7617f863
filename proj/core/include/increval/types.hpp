#pragma once

// Domain types shared by every increval module. All of them are plain values:
// build them once, then pass them around by const reference or copy.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace increval {

using Label = std::string;
using Labels = std::vector<Label>;
using Tokens = std::vector<std::string>;

enum class TaskKind { kTagging, kClassification };

std::string_view to_string(TaskKind task);
// Accepts "tagging" or "classification"; throws Error(kInvalidArgument).
TaskKind parse_task_kind(std::string_view text);

enum class LabelScheme { kBio, kPlain };

std::string_view to_string(LabelScheme scheme);
LabelScheme parse_label_scheme(std::string_view text);

// True for "O", "B-<type>" and "I-<type>" with a non-empty type.
bool is_bio_label(std::string_view label);

struct TokenSequence {
  std::string id;
  Tokens tokens;

  std::size_t size() const noexcept { return tokens.size(); }
  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

// Output of the processor at one time step. Undelayed tagging output at
// step t holds t labels; classification output holds exactly one.
using StepOutput = Labels;

struct GoldAnnotation {
  Labels labels;
  LabelScheme scheme = LabelScheme::kPlain;

  friend bool operator==(const GoldAnnotation&, const GoldAnnotation&) = default;
};

// Partial outputs of one sequence, one entry per consumed token. steps[t-1]
// is the output after t tokens; steps.back() is the non-incremental output.
struct IncrementalTrace {
  std::string sequence_id;
  TaskKind task = TaskKind::kTagging;
  Tokens tokens;
  std::vector<StepOutput> steps;
  std::optional<Labels> gold;

  std::size_t size() const noexcept { return tokens.size(); }
  const StepOutput& final_output() const { return steps.back(); }

  friend bool operator==(const IncrementalTrace&, const IncrementalTrace&) = default;
};

// Number of right-context tokens observed before a label is first emitted.
struct Delay {
  std::size_t value = 0;

  friend auto operator<=>(const Delay&, const Delay&) = default;
};

// Exact non-negative fraction; always stored reduced with a positive
// denominator.
class Ratio {
 public:
  Ratio() = default;
  Ratio(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double value() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend bool operator==(const Ratio&, const Ratio&) = default;
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::string to_string(const Ratio& r);

struct Violation {
  std::size_t step = 0;  // 0 for sequence-level problems
  std::string reason;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::string summary() const;
  friend bool operator==(const ValidationResult&, const ValidationResult&) = default;
};

ValidationResult validate_trace(const IncrementalTrace& trace);

// Throws Error(kInvalidTrace) carrying the first violation.
void require_valid(const IncrementalTrace& trace);

}  // namespace increval
