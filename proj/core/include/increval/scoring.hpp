#pragma once

// Scoring of final outputs against gold annotations.

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "increval/types.hpp"

namespace increval {

// Labelled span over 1-based inclusive token positions.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string type;

  friend auto operator<=>(const Span&, const Span&) = default;
};

// Spans are maximal B-x (I-x)* runs. An I-x that does not continue a span
// of the same type is ignored.
std::vector<Span> extract_spans(const Labels& labels);

struct SpanCounts {
  std::size_t predicted = 0;
  std::size_t gold = 0;
  std::size_t matched = 0;

  double precision() const;
  double recall() const;
  double f1() const;
};

enum class GoldMetric { kSpanF1, kTokenAccuracy, kLabelAccuracy };

std::string_view to_string(GoldMetric metric);

struct GoldScores {
  GoldMetric metric = GoldMetric::kTokenAccuracy;
  double score = 0.0;
  std::optional<SpanCounts> spans;  // set for span F1
  std::size_t correct_units = 0;    // tokens or labels; set for accuracy
  std::size_t total_units = 0;
  std::vector<bool> sequence_correct;
  double sentence_accuracy = 0.0;
};

// Micro-averaged span F1 for BIO tagging, token accuracy for plain tagging,
// label accuracy for classification. Throws Error(kLengthMismatch) for
// misaligned inputs and Error(kInvalidArgument) for non-BIO labels under the
// BIO scheme.
GoldScores gold_scores(std::span<const Labels> predicted, std::span<const Labels> gold,
                       TaskKind task, LabelScheme scheme);

// BIO when every label matches the BIO grammar, Plain otherwise.
LabelScheme detect_scheme(std::span<const Labels> gold);

}  // namespace increval
