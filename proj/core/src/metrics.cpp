#include "increval/metrics.hpp"

#include <algorithm>

namespace increval {

std::size_t necessary_edits(TaskKind task, std::size_t length) {
  return task == TaskKind::kTagging ? length : std::size_t{1};
}

Ratio edit_overhead(const IncrementalTrace& trace, Delay delay) {
  const EditCounts counts = count_edits(edit_scripts(apply_delay(trace, delay)));
  const auto necessary = static_cast<std::int64_t>(necessary_edits(trace.task, trace.size()));
  const auto unnecessary = static_cast<std::int64_t>(counts.substitutions);
  return Ratio(unnecessary, necessary + unnecessary);
}

std::size_t settle_step(const IncrementalTrace& trace, std::size_t position) {
  const std::size_t n = trace.size();
  const std::size_t first = trace.task == TaskKind::kTagging ? position : 1;
  const std::size_t idx = trace.task == TaskKind::kTagging ? position - 1 : 0;
  const Label& final_label = trace.steps[n - 1][idx];
  std::size_t settled = n;
  while (settled > first && trace.steps[settled - 2][idx] == final_label) --settled;
  return settled;
}

Ratio correction_time_score(const IncrementalTrace& trace) {
  require_valid(trace);
  const auto n = static_cast<std::int64_t>(trace.size());
  if (n == 1) return Ratio(0, 1);

  if (trace.task == TaskKind::kClassification) {
    return Ratio(static_cast<std::int64_t>(settle_step(trace, 1)) - 1, n - 1);
  }
  std::int64_t delays = 0;
  for (std::int64_t i = 1; i <= n; ++i) {
    delays += static_cast<std::int64_t>(settle_step(trace, static_cast<std::size_t>(i))) - i;
  }
  return Ratio(delays, n * (n - 1) / 2);
}

Ratio relative_correctness(const IncrementalTrace& trace, Delay delay) {
  const DelayedView view = apply_delay(trace, delay);
  const StepOutput& final_output = view.final_output();
  std::int64_t correct = 0;
  for (const StepOutput& emission : view.emissions) {
    if (emission.size() <= final_output.size() &&
        std::equal(emission.begin(), emission.end(), final_output.begin())) {
      ++correct;
    }
  }
  return Ratio(correct, static_cast<std::int64_t>(view.emissions.size()));
}

std::vector<Ratio> partial_edit_overhead(const IncrementalTrace& trace) {
  const DelayedView view = apply_delay(trace, Delay{0});
  const std::vector<EditScript> scripts = edit_scripts(view);

  std::vector<Ratio> series;
  series.reserve(view.emissions.size());
  std::int64_t substitutions = 0;
  std::int64_t total = 0;
  auto next = scripts.begin();
  for (std::size_t t = 1; t <= view.emissions.size(); ++t) {
    if (next != scripts.end() && next->step == t) {
      const auto subs = static_cast<std::int64_t>(next->count(EditKind::kSubstitution));
      substitutions += subs;
      total += static_cast<std::int64_t>(next->edits.size());
      ++next;
    }
    series.push_back(total == 0 ? Ratio(0, 1) : Ratio(substitutions, total));
  }
  return series;
}

}  // namespace increval
