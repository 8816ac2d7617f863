#include "increval/scoring.hpp"

#include <set>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "increval/error.hpp"
#include "oracles.hpp"

namespace increval {
namespace {

double span_f1(const Labels& predicted, const Labels& gold) {
  const std::vector<Labels> p{predicted};
  const std::vector<Labels> g{gold};
  return gold_scores(p, g, TaskKind::kTagging, LabelScheme::kBio).score;
}

TEST(ExtractSpans, MaximalRuns) {
  const auto spans = extract_spans({"B-NP", "I-NP", "B-NP", "O", "I-VP", "B-VP", "I-NP"});
  const std::vector<Span> expected{{1, 2, "NP"}, {3, 3, "NP"}, {6, 6, "VP"}};
  EXPECT_EQ(spans, expected);
}

TEST(SpanF1, ExactMatch) {
  EXPECT_DOUBLE_EQ(span_f1({"B-NP", "I-NP", "O"}, {"B-NP", "I-NP", "O"}), 1.0);
}

TEST(SpanF1, PartialRecall) {
  const double f1 = span_f1({"B-NP", "I-NP", "O"}, {"B-NP", "I-NP", "B-VP"});
  EXPECT_NEAR(f1, 2.0 / 3.0, 1e-12);
  const std::vector<Labels> p{{"B-NP", "I-NP", "O"}};
  const std::vector<Labels> g{{"B-NP", "I-NP", "B-VP"}};
  const auto scores = gold_scores(p, g, TaskKind::kTagging, LabelScheme::kBio);
  ASSERT_TRUE(scores.spans.has_value());
  EXPECT_DOUBLE_EQ(scores.spans->precision(), 1.0);
  EXPECT_DOUBLE_EQ(scores.spans->recall(), 0.5);
}

TEST(SpanF1, BoundaryMismatchScoresZero) {
  EXPECT_DOUBLE_EQ(span_f1({"B-NP", "O", "O"}, {"B-NP", "I-NP", "O"}), 0.0);
}

TEST(SpanF1, NoSpansAnywhere) {
  EXPECT_DOUBLE_EQ(span_f1({"O", "O"}, {"O", "O"}), 0.0);
}

TEST(SpanF1, MicroAveraged) {
  const std::vector<Labels> p{{"B-A"}, {"B-A", "B-B"}};
  const std::vector<Labels> g{{"B-A"}, {"B-A", "O"}};
  const auto scores = gold_scores(p, g, TaskKind::kTagging, LabelScheme::kBio);
  EXPECT_EQ(scores.spans->matched, 2u);
  EXPECT_EQ(scores.spans->predicted, 3u);
  EXPECT_EQ(scores.spans->gold, 2u);
  EXPECT_NEAR(scores.score, 0.8, 1e-12);
  EXPECT_EQ(scores.sequence_correct, (std::vector<bool>{true, false}));
  EXPECT_DOUBLE_EQ(scores.sentence_accuracy, 0.5);
}

TEST(GoldScores, TokenAccuracyForPlainTagging) {
  const std::vector<Labels> p{{"N", "V"}, {"D"}};
  const std::vector<Labels> g{{"N", "N"}, {"D"}};
  const auto scores = gold_scores(p, g, TaskKind::kTagging, LabelScheme::kPlain);
  EXPECT_EQ(scores.metric, GoldMetric::kTokenAccuracy);
  EXPECT_EQ(scores.correct_units, 2u);
  EXPECT_EQ(scores.total_units, 3u);
  EXPECT_NEAR(scores.score, 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(scores.sentence_accuracy, 0.5);
}

TEST(GoldScores, LabelAccuracyForClassification) {
  const std::vector<Labels> p{{"pos"}, {"neg"}, {"pos"}, {"neg"}};
  const std::vector<Labels> g{{"pos"}, {"pos"}, {"pos"}, {"neg"}};
  const auto scores = gold_scores(p, g, TaskKind::kClassification, LabelScheme::kPlain);
  EXPECT_EQ(scores.metric, GoldMetric::kLabelAccuracy);
  EXPECT_DOUBLE_EQ(scores.score, 0.75);
  EXPECT_DOUBLE_EQ(scores.sentence_accuracy, 0.75);
}

TEST(GoldScores, Errors) {
  const std::vector<Labels> p{{"B-A", "O"}};
  const std::vector<Labels> short_gold{{"B-A"}};
  const std::vector<Labels> bad{{"B-A", "X"}};
  try {
    gold_scores(p, short_gold, TaskKind::kTagging, LabelScheme::kBio);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
  try {
    gold_scores(p, bad, TaskKind::kTagging, LabelScheme::kBio);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  const std::vector<Labels> two{{"B-A", "O"}, {"O"}};
  EXPECT_THROW(gold_scores(p, two, TaskKind::kTagging, LabelScheme::kBio), Error);
}

TEST(DetectScheme, BioOrPlain) {
  const std::vector<Labels> bio{{"B-A", "I-A", "O"}};
  const std::vector<Labels> plain{{"NN", "O"}};
  EXPECT_EQ(detect_scheme(bio), LabelScheme::kBio);
  EXPECT_EQ(detect_scheme(plain), LabelScheme::kPlain);
}

TEST(ScoringProperty, SpansMatchBruteForce) {
  testing::Rng rng(41);
  for (int k = 0; k < 500; ++k) {
    const auto labels = testing::random_bio(rng, testing::uniform(rng, 1, 14), 2);
    std::vector<std::tuple<std::size_t, std::size_t, std::string>> got;
    for (const auto& s : extract_spans(labels)) got.emplace_back(s.begin, s.end, s.type);
    EXPECT_EQ(got, oracle::spans(labels));
  }
}

TEST(ScoringProperty, F1MatchesBruteForce) {
  testing::Rng rng(43);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = testing::uniform(rng, 1, 12);
    const auto pred = testing::random_bio(rng, n, 2);
    const auto gold = testing::random_bio(rng, n, 2);
    const auto ps = oracle::spans(pred);
    const auto gs = oracle::spans(gold);
    const std::set<std::tuple<std::size_t, std::size_t, std::string>> gset(gs.begin(), gs.end());
    std::size_t matched = 0;
    for (const auto& s : ps) matched += gset.count(s);
    const std::vector<Labels> p{pred};
    const std::vector<Labels> g{gold};
    const auto scores = gold_scores(p, g, TaskKind::kTagging, LabelScheme::kBio);
    EXPECT_EQ(scores.spans->matched, matched);
    EXPECT_EQ(scores.spans->predicted, ps.size());
    EXPECT_EQ(scores.spans->gold, gs.size());
    EXPECT_NEAR(scores.score, oracle::f1(matched, ps.size(), gs.size()), 1e-12);
  }
}

}  // namespace
}  // namespace increval
