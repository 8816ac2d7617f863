#include "increval/streaming.hpp"

#include <algorithm>

#include "increval/error.hpp"
#include "increval/metrics.hpp"

namespace increval {

const DelayMetrics& SequenceMetrics::at(Delay delay) const {
  for (const auto& m : per_delay) {
    if (m.delay == delay) return m;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "delay " + std::to_string(delay.value) + " was not evaluated",
              ErrorContext{std::nullopt, std::nullopt, {}, sequence_id});
}

StreamingEvaluator::StreamingEvaluator(TaskKind task, std::vector<Delay> delays)
    : task_(task), delays_(std::move(delays)) {
  std::sort(delays_.begin(), delays_.end());
  delays_.erase(std::unique(delays_.begin(), delays_.end()), delays_.end());
  tracks_.push_back(Track{});
  for (const Delay d : delays_) {
    if (d.value > 0) tracks_.push_back(Track{d.value, {}, 0, 0, {}});
  }
}

void StreamingEvaluator::push(const StepOutput& step) {
  const std::size_t t = steps_seen_ + 1;
  const std::size_t expected = task_ == TaskKind::kTagging ? t : 1;
  if (step.size() != expected) {
    throw Error(ErrorCode::kInvalidTrace,
                "expected " + std::to_string(expected) + " labels, found " +
                    std::to_string(step.size()),
                ErrorContext{t, std::nullopt, {}, {}});
  }
  if (pending_) {
    for (Track& track : tracks_) emit(track, *pending_, steps_seen_, false);
  }
  pending_ = step;
  steps_seen_ = t;
}

void StreamingEvaluator::emit(Track& track, const StepOutput& step, std::size_t t,
                              bool is_final) {
  std::size_t length = step.size();
  if (!is_final && track.delay > 0) {
    if (t <= track.delay) {
      length = 0;
    } else if (task_ == TaskKind::kTagging) {
      length = t - track.delay;
    }
  }
  if (length < track.emitted.size()) {
    throw Error(ErrorCode::kNonMonotoneEmission, "emission shrinks",
                ErrorContext{t, std::nullopt, {}, {}});
  }

  for (std::size_t i = 0; i < track.emitted.size(); ++i) {
    if (track.emitted[i] != step[i]) {
      track.emitted[i] = step[i];
      track.history[i].push_back({t, step[i]});
      ++track.substitutions;
    }
  }
  for (std::size_t i = track.emitted.size(); i < length; ++i) {
    track.emitted.push_back(step[i]);
    track.history.push_back({{t, step[i]}});
    ++track.additions;
  }

  if (track.delay == 0) {
    const auto edits = static_cast<std::int64_t>(track.substitutions + track.additions);
    partial_eo_.push_back(edits == 0 ? Ratio(0, 1)
                                     : Ratio(static_cast<std::int64_t>(track.substitutions),
                                             edits));
  }
}

Ratio StreamingEvaluator::correct_share(const Track& track, std::size_t n) const {
  // Mark, per step, how many positions currently hold a label that differs
  // from the final one; steps with no such position are correct prefixes.
  std::vector<std::int64_t> wrong(n + 2, 0);
  for (std::size_t pos = 0; pos < track.history.size(); ++pos) {
    const auto& runs = track.history[pos];
    for (std::size_t k = 0; k < runs.size(); ++k) {
      if (runs[k].label == track.emitted[pos]) continue;
      const std::size_t end = k + 1 < runs.size() ? runs[k + 1].step : n + 1;
      ++wrong[runs[k].step];
      --wrong[end];
    }
  }
  std::int64_t correct = 0;
  std::int64_t open = 0;
  for (std::size_t t = 1; t <= n; ++t) {
    open += wrong[t];
    if (open == 0) ++correct;
  }
  return Ratio(correct, static_cast<std::int64_t>(n));
}

SequenceMetrics StreamingEvaluator::finish(std::string sequence_id,
                                           const std::optional<Labels>& gold) {
  if (!pending_) {
    throw Error(ErrorCode::kInvalidTrace, "no steps were pushed",
                ErrorContext{std::nullopt, std::nullopt, {}, sequence_id});
  }
  const std::size_t n = steps_seen_;
  for (Track& track : tracks_) emit(track, *pending_, n, true);

  SequenceMetrics out;
  out.sequence_id = std::move(sequence_id);
  out.task = task_;
  out.length = n;

  const auto necessary = static_cast<std::int64_t>(necessary_edits(task_, n));
  for (const Delay d : delays_) {
    const Track& track = *std::find_if(tracks_.begin(), tracks_.end(),
                                       [&](const Track& tr) { return tr.delay == d.value; });
    const auto subs = static_cast<std::int64_t>(track.substitutions);
    out.per_delay.push_back(
        DelayMetrics{d, Ratio(subs, necessary + subs), correct_share(track, n),
                     track.substitutions});
  }

  const Track& undelayed = tracks_.front();
  if (n == 1) {
    out.ct = Ratio(0, 1);
  } else if (task_ == TaskKind::kClassification) {
    out.ct = Ratio(static_cast<std::int64_t>(undelayed.history[0].back().step) - 1,
                   static_cast<std::int64_t>(n) - 1);
  } else {
    std::int64_t settle = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
      settle += static_cast<std::int64_t>(undelayed.history[pos].back().step) -
                static_cast<std::int64_t>(pos + 1);
    }
    const auto len = static_cast<std::int64_t>(n);
    out.ct = Ratio(settle, len * (len - 1) / 2);
  }

  if (gold) out.final_correct = (*gold == undelayed.emitted);
  pending_.reset();
  return out;
}

SequenceMetrics evaluate_sequence(const IncrementalTrace& trace,
                                  const std::vector<Delay>& delays) {
  require_valid(trace);
  StreamingEvaluator evaluator(trace.task, delays);
  for (const StepOutput& step : trace.steps) evaluator.push(step);
  return evaluator.finish(trace.sequence_id, trace.gold);
}

}  // namespace increval
