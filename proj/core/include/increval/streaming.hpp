#pragma once

#include <optional>
#include <string>
#include <vector>

#include "increval/types.hpp"

namespace increval {

struct DelayMetrics {
  Delay delay;
  Ratio eo;
  Ratio rc;
  std::size_t substitutions = 0;

  friend bool operator==(const DelayMetrics&, const DelayMetrics&) = default;
};

struct SequenceMetrics {
  std::string sequence_id;
  TaskKind task = TaskKind::kTagging;
  std::size_t length = 0;
  std::vector<DelayMetrics> per_delay;  // ascending delay order
  Ratio ct;
  std::optional<bool> final_correct;

  // Throws Error(kInvalidArgument) if the delay was not evaluated.
  const DelayMetrics& at(Delay delay) const;

  friend bool operator==(const SequenceMetrics&, const SequenceMetrics&) = default;
};

// Single-pass evaluator: feed the undelayed step outputs of one sequence in
// order, then call finish(). Keeps per-position change histories instead of
// the full trace, so EO, RC and CT come out without materialising delayed
// views.
class StreamingEvaluator {
 public:
  StreamingEvaluator(TaskKind task, std::vector<Delay> delays);

  // Throws Error(kInvalidTrace) when the step has the wrong number of labels.
  void push(const StepOutput& step);

  std::size_t steps_seen() const noexcept { return steps_seen_; }

  // Closes the sequence; the most recent push is taken as the final output.
  // Throws Error(kInvalidTrace) if nothing was pushed.
  SequenceMetrics finish(std::string sequence_id,
                         const std::optional<Labels>& gold = std::nullopt);

  // Undelayed cumulative EO after each step; complete once finish() ran.
  const std::vector<Ratio>& partial_eo() const noexcept { return partial_eo_; }

 private:
  struct Change {
    std::size_t step;
    Label label;
  };
  struct Track {
    std::size_t delay = 0;
    StepOutput emitted;
    std::size_t substitutions = 0;
    std::size_t additions = 0;
    std::vector<std::vector<Change>> history;  // per position
  };

  void emit(Track& track, const StepOutput& step, std::size_t t, bool is_final);
  Ratio correct_share(const Track& track, std::size_t n) const;

  TaskKind task_;
  std::vector<Delay> delays_;
  std::vector<Track> tracks_;  // tracks_[0] is always the undelayed track
  std::optional<StepOutput> pending_;
  std::size_t steps_seen_ = 0;
  std::vector<Ratio> partial_eo_;
};

// Convenience wrapper: validates the trace, streams it, and compares the
// final output with the trace's gold when present.
SequenceMetrics evaluate_sequence(const IncrementalTrace& trace,
                                  const std::vector<Delay>& delays);

}  // namespace increval
