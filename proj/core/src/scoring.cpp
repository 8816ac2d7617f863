#include "increval/scoring.hpp"

#include <algorithm>
#include <iterator>

#include "increval/error.hpp"

namespace increval {
namespace {

std::string_view span_type(std::string_view label) { return label.substr(2); }

double safe_div(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void require_bio(const Labels& labels, std::size_t sequence, const char* side) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!is_bio_label(labels[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(side) + " label '" + labels[i] + "' at position " +
                      std::to_string(i + 1) + " is not a BIO label",
                  ErrorContext{std::nullopt, std::nullopt, {},
                               "#" + std::to_string(sequence + 1)});
    }
  }
}

}  // namespace

std::vector<Span> extract_spans(const Labels& labels) {
  std::vector<Span> spans;
  std::size_t i = 0;
  while (i < labels.size()) {
    const std::string_view label = labels[i];
    if (label.size() < 3 || label[0] != 'B' || label[1] != '-') {
      ++i;
      continue;
    }
    const std::string_view type = span_type(label);
    std::size_t j = i + 1;
    while (j < labels.size() && labels[j].size() > 2 && labels[j][0] == 'I' &&
           labels[j][1] == '-' && span_type(labels[j]) == type) {
      ++j;
    }
    spans.push_back(Span{i + 1, j, std::string(type)});
    i = j;
  }
  return spans;
}

double SpanCounts::precision() const { return safe_div(matched, predicted); }
double SpanCounts::recall() const { return safe_div(matched, gold); }
double SpanCounts::f1() const {
  const double p = precision();
  const double r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

std::string_view to_string(GoldMetric metric) {
  switch (metric) {
    case GoldMetric::kSpanF1: return "span_f1";
    case GoldMetric::kTokenAccuracy: return "token_accuracy";
    case GoldMetric::kLabelAccuracy: return "label_accuracy";
  }
  return "?";
}

GoldScores gold_scores(std::span<const Labels> predicted, std::span<const Labels> gold,
                       TaskKind task, LabelScheme scheme) {
  if (predicted.size() != gold.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(predicted.size()) + " predicted sequences vs " +
                    std::to_string(gold.size()) + " gold sequences");
  }
  GoldScores out;
  const bool bio = task == TaskKind::kTagging && scheme == LabelScheme::kBio;
  out.metric = task == TaskKind::kClassification ? GoldMetric::kLabelAccuracy
               : bio                             ? GoldMetric::kSpanF1
                                                 : GoldMetric::kTokenAccuracy;
  SpanCounts spans;
  std::size_t correct_sequences = 0;

  for (std::size_t s = 0; s < gold.size(); ++s) {
    const Labels& pred = predicted[s];
    const Labels& ref = gold[s];
    const std::size_t expected = task == TaskKind::kTagging ? ref.size() : 1;
    if (pred.size() != ref.size() || ref.size() != expected || ref.empty()) {
      throw Error(ErrorCode::kLengthMismatch,
                  "sequence has " + std::to_string(pred.size()) + " predicted vs " +
                      std::to_string(ref.size()) + " gold labels",
                  ErrorContext{std::nullopt, std::nullopt, {},
                               "#" + std::to_string(s + 1)});
    }
    if (bio) {
      require_bio(ref, s, "gold");
      require_bio(pred, s, "predicted");
      const std::vector<Span> pred_spans = extract_spans(pred);
      const std::vector<Span> gold_spans = extract_spans(ref);
      std::vector<Span> common;
      std::set_intersection(pred_spans.begin(), pred_spans.end(), gold_spans.begin(),
                            gold_spans.end(), std::back_inserter(common));
      spans.predicted += pred_spans.size();
      spans.gold += gold_spans.size();
      spans.matched += common.size();
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < ref.size(); ++i) correct += pred[i] == ref[i] ? 1 : 0;
    out.correct_units += correct;
    out.total_units += ref.size();
    const bool all = correct == ref.size();
    out.sequence_correct.push_back(all);
    correct_sequences += all ? 1 : 0;
  }

  if (bio) {
    out.spans = spans;
    out.score = spans.f1();
  } else {
    out.score = safe_div(out.correct_units, out.total_units);
  }
  out.sentence_accuracy = safe_div(correct_sequences, gold.size());
  return out;
}

LabelScheme detect_scheme(std::span<const Labels> gold) {
  for (const Labels& labels : gold) {
    for (const Label& label : labels) {
      if (!is_bio_label(label)) return LabelScheme::kPlain;
    }
  }
  return LabelScheme::kBio;
}

}  // namespace increval
