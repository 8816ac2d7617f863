#include "increval/ngram.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "increval/error.hpp"

namespace increval {
namespace {

const std::string kS(NGramModel::kStart);
const std::string kE(NGramModel::kEnd);

NGramModel bigram() {
  const std::vector<Tokens> corpus{{"a", "b", "c"}, {"a", "b", "d"}};
  return NGramModel::train(corpus, 2);
}

TEST(NGramTrain, BigramCounts) {
  const auto m = bigram();
  EXPECT_EQ(m.order(), 2u);
  EXPECT_EQ(m.count({"a"}, "b"), 2u);
  EXPECT_EQ(m.count({"b"}, "c"), 1u);
  EXPECT_EQ(m.count({"b"}, "d"), 1u);
  EXPECT_EQ(m.count({"c"}, kE), 1u);
  EXPECT_EQ(m.count({"d"}, kE), 1u);
  EXPECT_EQ(m.count({kS}, "a"), 2u);
  EXPECT_EQ(m.count({"a"}, "c"), 0u);
  EXPECT_EQ(m.count({"zzz"}, "a"), 0u);
}

TEST(NGramTrain, SingleToken) {
  const std::vector<Tokens> corpus{{"x"}};
  const auto m = NGramModel::train(corpus, 2);
  EXPECT_EQ(m.count({kS}, "x"), 1u);
  EXPECT_EQ(m.count({"x"}, kE), 1u);
}

TEST(NGramTrain, TrigramKeepsShorterContexts) {
  const std::vector<Tokens> corpus{{"a", "b", "c"}};
  const auto m = NGramModel::train(corpus, 3);
  EXPECT_EQ(m.count({kS, kS}, "a"), 1u);
  EXPECT_EQ(m.count({kS, "a"}, "b"), 1u);
  EXPECT_EQ(m.count({"a", "b"}, "c"), 1u);
  EXPECT_EQ(m.count({"b"}, "c"), 1u);
}

TEST(NGramTrain, Deterministic) {
  EXPECT_EQ(bigram(), bigram());
}

TEST(NGramTrain, Errors) {
  const std::vector<Tokens> none;
  try {
    NGramModel::train(none, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
  const std::vector<Tokens> one{{"a"}};
  EXPECT_THROW(NGramModel::train(one, 1), Error);
}

TEST(NGramContinue, GreedyWithLexicographicTies) {
  const Tokens prefix{"a"};
  EXPECT_EQ(bigram().continue_greedy(prefix, 20), (Tokens{"b", "c"}));
}

TEST(NGramContinue, RespectsMaxLength) {
  const Tokens prefix{"a"};
  EXPECT_EQ(bigram().continue_greedy(prefix, 1), (Tokens{"b"}));
  EXPECT_TRUE(bigram().continue_greedy(prefix, 0).empty());
}

TEST(NGramContinue, UnseenContextStops) {
  const Tokens prefix{"q"};
  EXPECT_TRUE(bigram().continue_greedy(prefix, 20).empty());
}

TEST(NGramContinue, BacksOffToShorterContext) {
  const std::vector<Tokens> corpus{{"x", "a", "b"}, {"y", "a", "b"}};
  const auto m = NGramModel::train(corpus, 3);
  const Tokens prefix{"z", "a"};
  EXPECT_EQ(m.continue_greedy(prefix, 5), (Tokens{"b"}));
}

TEST(NGramContinue, NeverEmitsEndSymbol) {
  testing::Rng rng(61);
  std::vector<Tokens> corpus;
  for (int k = 0; k < 50; ++k) corpus.push_back(testing::random_sentence(rng, 8, 4));
  const auto m = NGramModel::train(corpus, 3);
  for (int k = 0; k < 100; ++k) {
    const auto prefix = testing::random_sentence(rng, 5, 4);
    const auto out = m.continue_greedy(prefix, 10);
    EXPECT_LE(out.size(), 10u);
    for (const auto& tok : out) EXPECT_NE(tok, kE);
    EXPECT_EQ(out, m.continue_greedy(prefix, 10));
  }
}

TEST(NGramSerialization, RoundTripIsIdentical) {
  testing::Rng rng(67);
  std::vector<Tokens> corpus;
  for (int k = 0; k < 40; ++k) corpus.push_back(testing::random_sentence(rng, 9, 5));
  const auto m = NGramModel::train(corpus, 3);
  std::ostringstream first;
  m.save(first);
  std::istringstream in(first.str());
  const auto loaded = NGramModel::load(in);
  EXPECT_EQ(loaded, m);
  std::ostringstream second;
  loaded.save(second);
  EXPECT_EQ(first.str(), second.str());
}

TEST(NGramSerialization, BadInputReportsLine) {
  std::istringstream in("increval-ngram 1\norder\t2\nnot a valid line\n");
  try {
    NGramModel::load(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_EQ(e.context().line, 3u);
  }
  std::istringstream wrong_header("something else\n");
  EXPECT_THROW(NGramModel::load(wrong_header), Error);
}

}  // namespace
}  // namespace increval
