#include "increval/report.hpp"

#include <algorithm>
#include <numeric>

#include "increval/error.hpp"
#include "increval/metrics.hpp"
#include "increval/parallel.hpp"

namespace increval {

double order_independent_mean(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  return sum / static_cast<double>(values.size());
}

CorpusReport corpus_report(std::span<const IncrementalTrace> traces,
                           const ReportOptions& options) {
  if (traces.empty()) throw Error(ErrorCode::kEmptyInput, "no traces to evaluate");
  if (options.delays.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "delay set is empty");
  }
  const TaskKind task = traces.front().task;
  const bool with_gold = traces.front().gold.has_value();
  for (const auto& trace : traces) {
    if (trace.task != task) {
      throw Error(ErrorCode::kInvalidArgument, "traces mix task kinds",
                  ErrorContext{std::nullopt, std::nullopt, {}, trace.sequence_id});
    }
    if (trace.gold.has_value() != with_gold) {
      throw Error(ErrorCode::kMissingGold,
                  "gold must be present for all sequences or for none",
                  ErrorContext{std::nullopt, std::nullopt, {}, trace.sequence_id});
    }
  }

  CorpusReport report;
  report.sequences.resize(traces.size());
  parallel_for(traces.size(), options.jobs, [&](std::size_t i) {
    report.sequences[i] = evaluate_sequence(traces[i], options.delays);
  });

  CorpusMetrics& summary = report.summary;
  summary.task = task;
  summary.sequences = traces.size();
  for (const auto& trace : traces) summary.tokens += trace.size();

  const std::vector<DelayMetrics>& delays = report.sequences.front().per_delay;
  for (std::size_t k = 0; k < delays.size(); ++k) {
    std::vector<double> eo;
    std::vector<double> rc;
    for (const auto& seq : report.sequences) {
      eo.push_back(seq.per_delay[k].eo.value());
      rc.push_back(seq.per_delay[k].rc.value());
    }
    summary.per_delay.push_back(DelaySummary{delays[k].delay,
                                             order_independent_mean(std::move(eo)),
                                             order_independent_mean(std::move(rc))});
  }
  std::vector<double> ct;
  for (const auto& seq : report.sequences) ct.push_back(seq.ct.value());
  summary.mean_ct = order_independent_mean(std::move(ct));

  if (with_gold) {
    std::vector<Labels> predicted;
    std::vector<Labels> gold;
    for (const auto& trace : traces) {
      predicted.push_back(trace.final_output());
      gold.push_back(*trace.gold);
    }
    const LabelScheme scheme = options.scheme.value_or(detect_scheme(gold));
    summary.gold = gold_scores(predicted, gold, task, scheme);
  }
  return report;
}

EoCurves eo_over_time(std::span<const IncrementalTrace> traces) {
  struct Accumulator {
    std::vector<std::vector<double>> values;  // per step
  };
  Accumulator correct;
  Accumulator incorrect;

  for (const auto& trace : traces) {
    if (!trace.gold) {
      throw Error(ErrorCode::kMissingGold, "sequence has no gold annotation",
                  ErrorContext{std::nullopt, std::nullopt, {}, trace.sequence_id});
    }
    const std::vector<Ratio> series = partial_edit_overhead(trace);
    Accumulator& acc = *trace.gold == trace.final_output() ? correct : incorrect;
    if (acc.values.size() < series.size()) acc.values.resize(series.size());
    for (std::size_t t = 0; t < series.size(); ++t) {
      acc.values[t].push_back(series[t].value());
    }
  }

  auto finish = [](Accumulator& acc) {
    CurveGroup group;
    for (auto& at_step : acc.values) {
      group.support.push_back(at_step.size());
      group.mean_eo.push_back(order_independent_mean(std::move(at_step)));
    }
    return group;
  };
  return EoCurves{finish(correct), finish(incorrect)};
}

}  // namespace increval
