#include "increval/metrics.hpp"

#include <gtest/gtest.h>

#include "generators.hpp"
#include "increval/error.hpp"
#include "oracles.hpp"

namespace increval {
namespace {

using testing::trace_e1;
using testing::trace_e2;

TEST(EditOverhead, E1) {
  EXPECT_EQ(edit_overhead(trace_e1(), Delay{0}), Ratio(1, 4));
  EXPECT_EQ(edit_overhead(trace_e1(), Delay{1}), Ratio(1, 4));
  EXPECT_EQ(edit_overhead(trace_e1(), Delay{2}), Ratio(0, 1));
}

TEST(EditOverhead, E2) {
  EXPECT_EQ(edit_overhead(trace_e2(), Delay{0}), Ratio(1, 2));
  EXPECT_EQ(edit_overhead(trace_e2(), Delay{3}), Ratio(0, 1));
}

TEST(CorrectionTime, WorkedExamples) {
  EXPECT_EQ(correction_time_score(trace_e1()), Ratio(2, 3));
  EXPECT_EQ(correction_time_score(trace_e2()), Ratio(2, 3));
}

TEST(CorrectionTime, SingleToken) {
  const IncrementalTrace tagging{"t", TaskKind::kTagging, {"x"}, {{"A"}}, std::nullopt};
  const IncrementalTrace classification{"c", TaskKind::kClassification, {"x"}, {{"A"}},
                                        std::nullopt};
  EXPECT_EQ(correction_time_score(tagging), Ratio(0, 1));
  EXPECT_EQ(correction_time_score(classification), Ratio(0, 1));
  EXPECT_EQ(edit_overhead(tagging, Delay{0}), Ratio(0, 1));
  EXPECT_EQ(relative_correctness(tagging, Delay{0}), Ratio(1, 1));
}

TEST(SettleStep, E1) {
  EXPECT_EQ(settle_step(trace_e1(), 1), 3u);
  EXPECT_EQ(settle_step(trace_e1(), 2), 2u);
  EXPECT_EQ(settle_step(trace_e1(), 3), 3u);
  EXPECT_EQ(settle_step(trace_e2(), 1), 3u);
}

TEST(RelativeCorrectness, E1) {
  EXPECT_EQ(relative_correctness(trace_e1(), Delay{0}), Ratio(1, 3));
  EXPECT_EQ(relative_correctness(trace_e1(), Delay{1}), Ratio(2, 3));
  EXPECT_EQ(relative_correctness(trace_e1(), Delay{2}), Ratio(1, 1));
}

TEST(RelativeCorrectness, E2) {
  EXPECT_EQ(relative_correctness(trace_e2(), Delay{0}), Ratio(1, 2));
  EXPECT_EQ(relative_correctness(trace_e2(), Delay{1}), Ratio(3, 4));
}

TEST(PartialEditOverhead, E1) {
  const std::vector<Ratio> expected{Ratio(0, 1), Ratio(0, 2), Ratio(1, 4)};
  EXPECT_EQ(partial_edit_overhead(trace_e1()), expected);
}

TEST(NecessaryEdits, ByTask) {
  EXPECT_EQ(necessary_edits(TaskKind::kTagging, 5), 5u);
  EXPECT_EQ(necessary_edits(TaskKind::kClassification, 5), 1u);
}

TEST(Metrics, RejectInvalidTrace) {
  auto tr = trace_e1();
  tr.steps.pop_back();
  EXPECT_THROW(edit_overhead(tr, Delay{0}), Error);
  EXPECT_THROW(correction_time_score(tr), Error);
  EXPECT_THROW(relative_correctness(tr, Delay{0}), Error);
}

TEST(MetricsProperty, MatchBruteForce) {
  testing::Rng rng(17);
  for (int k = 0; k < 400; ++k) {
    const auto tr = testing::random_any_trace(rng, 14);
    for (std::size_t d = 0; d <= 3; ++d) {
      EXPECT_EQ(edit_overhead(tr, Delay{d}), oracle::to_ratio(oracle::edit_overhead(tr, d)));
      EXPECT_EQ(relative_correctness(tr, Delay{d}),
                oracle::to_ratio(oracle::relative_correctness(tr, d)));
    }
    EXPECT_EQ(correction_time_score(tr), oracle::to_ratio(oracle::correction_time(tr)));
    std::vector<Ratio> partial;
    for (const auto& f : oracle::partial_edit_overhead(tr)) partial.push_back(oracle::to_ratio(f));
    EXPECT_EQ(partial_edit_overhead(tr), partial);
  }
}

TEST(MetricsProperty, Bounds) {
  testing::Rng rng(19);
  for (int k = 0; k < 500; ++k) {
    const auto tr = testing::random_any_trace(rng, 20);
    const auto n = static_cast<std::int64_t>(tr.size());
    const Ratio eo = edit_overhead(tr, Delay{0});
    const Ratio bound = tr.task == TaskKind::kTagging ? Ratio(n - 1, n + 1) : Ratio(n - 1, n);
    EXPECT_LE(eo, bound);
    EXPECT_LE(correction_time_score(tr), Ratio(1, 1));
    const Ratio rc = relative_correctness(tr, Delay{0});
    EXPECT_GE(rc, Ratio(1, n));
    EXPECT_LE(rc, Ratio(1, 1));
  }
}

// The bound is reached when every label changes at every step.
TEST(MetricsProperty, BoundAttained) {
  IncrementalTrace tr{"worst", TaskKind::kTagging, {"a", "b", "c", "d"}, {}, std::nullopt};
  for (std::size_t t = 1; t <= 4; ++t) tr.steps.emplace_back(t, std::string(1, 'A' + t));
  EXPECT_EQ(edit_overhead(tr, Delay{0}), Ratio(3, 5));
  EXPECT_EQ(correction_time_score(tr), Ratio(1, 1));
}

TEST(MetricsProperty, MonotoneInDelay) {
  testing::Rng rng(23);
  for (int k = 0; k < 300; ++k) {
    const auto tr = testing::random_any_trace(rng, 14);
    for (std::size_t d = 0; d < 4; ++d) {
      EXPECT_GE(edit_overhead(tr, Delay{d}), edit_overhead(tr, Delay{d + 1}));
      EXPECT_LE(relative_correctness(tr, Delay{d}), relative_correctness(tr, Delay{d + 1}));
    }
  }
}

TEST(MetricsProperty, DelayAtLeastLengthIsPerfect) {
  testing::Rng rng(29);
  for (int k = 0; k < 100; ++k) {
    const auto tr = testing::random_any_trace(rng, 10);
    EXPECT_EQ(edit_overhead(tr, Delay{tr.size()}), Ratio(0, 1));
    EXPECT_EQ(relative_correctness(tr, Delay{tr.size()}), Ratio(1, 1));
  }
}

}  // namespace
}  // namespace increval
