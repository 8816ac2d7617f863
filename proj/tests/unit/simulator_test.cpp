#include "increval/simulator.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "increval/error.hpp"
#include "increval/metrics.hpp"

namespace increval {
namespace {

// b = 1: label i is "B" when token i+1 is "!".
WindowSpec bang_window() {
  WindowSpec spec;
  spec.right = 1;
  spec.rules.push_back({{"*", "!"}, "B"});
  return spec;
}

ExternalProcessorSpec external(const std::string& mode) {
  ExternalProcessorSpec spec;
  spec.endpoint.command = std::string(INCREVAL_FAKE_ENDPOINT) + " " + mode;
  spec.endpoint.timeout = 5s;
  return spec;
}

TokenSequence seq(Tokens tokens) { return TokenSequence{"s", std::move(tokens)}; }

TEST(Lookup, CausalTagger) {
  LookupSpec spec;
  spec.table = {{"a", "X"}, {"b", "Y"}};
  const auto tr = run_incremental(seq({"a", "b"}), TaskKind::kTagging, spec, NoContinuation{});
  EXPECT_EQ(tr.steps, (std::vector<StepOutput>{{"X"}, {"X", "Y"}}));
  EXPECT_EQ(edit_overhead(tr, Delay{0}), Ratio(0, 1));
  EXPECT_TRUE(is_causal(spec));
}

TEST(Lookup, DefaultAndClassification) {
  LookupSpec spec;
  spec.table = {{"a", "X"}};
  spec.default_label = "Z";
  auto labeler = make_labeler(spec);
  const Tokens tokens{"q", "a"};
  EXPECT_EQ(labeler->label(tokens, TaskKind::kTagging), (Labels{"Z", "X"}));
  EXPECT_EQ(labeler->label(tokens, TaskKind::kClassification), (Labels{"X"}));
}

TEST(Window, BangRule) {
  const auto tr =
      run_incremental(seq({"a", "!", "c"}), TaskKind::kTagging, bang_window(), NoContinuation{});
  EXPECT_EQ(tr.steps, (std::vector<StepOutput>{{"O"}, {"B", "O"}, {"B", "O", "O"}}));
  EXPECT_EQ(edit_overhead(tr, Delay{0}), Ratio(1, 4));
  EXPECT_FALSE(is_causal(bang_window()));
}

TEST(Window, RepeatLastProphecy) {
  const auto tr = run_incremental(seq({"a", "!"}), TaskKind::kTagging, bang_window(),
                                  RepeatLastContinuation{});
  EXPECT_EQ(tr.steps, (std::vector<StepOutput>{{"O"}, {"B", "O"}}));
}

TEST(Window, BoundaryAndFirstMatch) {
  WindowSpec spec;
  spec.left = 1;
  spec.rules.push_back({{"<none>", "*"}, "FIRST"});
  spec.rules.push_back({{"a", "*"}, "AFTER_A"});
  spec.rules.push_back({{"*", "*"}, "ANY"});
  auto labeler = make_labeler(spec);
  const Tokens tokens{"a", "a", "b"};
  EXPECT_EQ(labeler->label(tokens, TaskKind::kTagging), (Labels{"FIRST", "AFTER_A", "AFTER_A"}));
  EXPECT_TRUE(is_causal(spec));
}

TEST(Window, ParseSpec) {
  std::istringstream in("left\t0\nright\t1\ndefault\tO\n\nrule\t*\t!\tB\n");
  const auto spec = parse_window_spec(in);
  EXPECT_EQ(spec.right, 1u);
  ASSERT_EQ(spec.rules.size(), 1u);
  EXPECT_EQ(spec.rules[0].pattern, (Tokens{"*", "!"}));
  EXPECT_EQ(spec.rules[0].label, "B");
}

TEST(Window, ParseErrorsCarryLine) {
  std::istringstream in("right\t1\nrule\t*\tB\n");
  try {
    parse_window_spec(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_EQ(e.context().line, 2u);
  }
}

TEST(Lookup, ParseSpec) {
  std::istringstream in("a\tX\n<default>\tN\nb\tY\n");
  const auto spec = parse_lookup_spec(in);
  EXPECT_EQ(spec.default_label, "N");
  EXPECT_EQ(spec.table.at("b"), "Y");
  std::istringstream bad("a\tX\nlonely\n");
  try {
    parse_lookup_spec(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.context().line, 2u);
  }
  EXPECT_THROW(load_lookup_spec("/nonexistent/map.tsv"), Error);
}

TEST(Continuation, Specs) {
  const Tokens prefix{"w1", "w2"};
  EXPECT_TRUE(continue_sequence(NoContinuation{}, prefix).empty());
  EXPECT_EQ(continue_sequence(RepeatLastContinuation{}, prefix), (Tokens{"w2"}));
  const std::vector<Tokens> corpus{{"a", "b", "c"}, {"a", "b", "d"}};
  NGramContinuation ngram{std::make_shared<NGramModel>(NGramModel::train(corpus, 2)), 20};
  const Tokens a{"a"};
  EXPECT_EQ(continue_sequence(ngram, a), (Tokens{"b", "c"}));
}

TEST(External, Labeler) {
  const auto tr = run_incremental(seq({"x", "y"}), TaskKind::kTagging, external("tagger"),
                                  NoContinuation{});
  EXPECT_EQ(tr.steps, (std::vector<StepOutput>{{"L-x"}, {"L-x", "L-y"}}));
  const auto cls = run_incremental(seq({"x", "y"}), TaskKind::kClassification,
                                   external("tagger"), NoContinuation{});
  EXPECT_EQ(cls.steps, (std::vector<StepOutput>{{"C-x"}, {"C-y"}}));
}

TEST(External, Continuation) {
  ExternalContinuation cont{external("continuer").endpoint};
  const Tokens prefix{"p", "q"};
  EXPECT_EQ(continue_sequence(cont, prefix), (Tokens{"q", "q"}));
  const Tokens empty;
  EXPECT_THROW(continue_sequence(cont, empty), Error);
}

TEST(External, FailuresCarryStepAndSequence) {
  for (const auto& [mode, code] : std::vector<std::pair<std::string, ErrorCode>>{
           {"bad-count", ErrorCode::kLabelCountMismatch},
           {"garbage", ErrorCode::kMalformedResponse},
           {"exit", ErrorCode::kBrokenPipe},
           {"bad-id", ErrorCode::kIdMismatch}}) {
    try {
      run_incremental(TokenSequence{"s9", {"a", "b"}}, TaskKind::kTagging, external(mode),
                      NoContinuation{});
      ADD_FAILURE() << mode;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code) << mode;
      EXPECT_EQ(e.context().step, 1u) << mode;
      EXPECT_EQ(e.context().sequence_id, "s9") << mode;
    }
  }
}

TEST(External, Timeout) {
  auto spec = external("silent");
  spec.endpoint.timeout = 200ms;
  try {
    run_incremental(seq({"a"}), TaskKind::kTagging, spec, NoContinuation{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTimeout);
  }
}

TEST(RunIncremental, RejectsEmptyInput) {
  EXPECT_THROW(run_incremental(seq({}), TaskKind::kTagging, LookupSpec{}, NoContinuation{}),
               Error);
}

TEST(SimulatorProperty, CausalProcessorsAreStable) {
  testing::Rng rng(71);
  for (int k = 0; k < 100; ++k) {
    const auto lookup = testing::random_lookup(rng, 6, 3);
    const auto window = testing::random_window(rng, 2, 0, 6, 4, 3);
    const auto tokens = seq(testing::random_sentence(rng, 15, 6));
    for (const ProcessorSpec& spec : {ProcessorSpec{lookup}, ProcessorSpec{window}}) {
      const auto tr = run_incremental(tokens, TaskKind::kTagging, spec, NoContinuation{});
      EXPECT_EQ(edit_overhead(tr, Delay{0}), Ratio(0, 1));
      EXPECT_EQ(correction_time_score(tr), Ratio(0, 1));
      EXPECT_EQ(relative_correctness(tr, Delay{0}), Ratio(1, 1));
    }
  }
}

TEST(SimulatorProperty, FinalStepIsBareOutput) {
  testing::Rng rng(73);
  std::vector<Tokens> corpus;
  for (int k = 0; k < 30; ++k) corpus.push_back(testing::random_sentence(rng, 8, 6));
  const auto model = std::make_shared<NGramModel>(NGramModel::train(corpus, 3));
  const std::vector<ContinuationSpec> continuations{
      NoContinuation{}, RepeatLastContinuation{}, NGramContinuation{model, 5}};
  for (int k = 0; k < 50; ++k) {
    const auto window = testing::random_window(rng, 1, 2, 6, 6, 3);
    const auto tokens = seq(testing::random_sentence(rng, 12, 6));
    auto bare = make_labeler(window);
    for (const auto task : {TaskKind::kTagging, TaskKind::kClassification}) {
      const Labels expected = bare->label(tokens.tokens, task);
      for (const auto& cont : continuations) {
        const auto tr = run_incremental(tokens, task, window, cont);
        EXPECT_TRUE(validate_trace(tr).ok());
        EXPECT_EQ(tr.final_output(), expected);
      }
    }
  }
}

}  // namespace
}  // namespace increval
