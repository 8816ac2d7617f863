#pragma once

// Corpus-level aggregation of per-sequence metrics.

#include <optional>
#include <span>
#include <vector>

#include "increval/scoring.hpp"
#include "increval/streaming.hpp"
#include "increval/types.hpp"

namespace increval {

struct DelaySummary {
  Delay delay;
  double mean_eo = 0.0;
  double mean_rc = 0.0;
};

struct CorpusMetrics {
  TaskKind task = TaskKind::kTagging;
  std::size_t sequences = 0;
  std::size_t tokens = 0;
  std::vector<DelaySummary> per_delay;
  double mean_ct = 0.0;
  std::optional<GoldScores> gold;
};

struct CorpusReport {
  CorpusMetrics summary;
  std::vector<SequenceMetrics> sequences;
};

struct ReportOptions {
  std::vector<Delay> delays{Delay{0}};
  // Detected from the gold labels when unset.
  std::optional<LabelScheme> scheme;
  unsigned jobs = 1;
};

// Gold comes from IncrementalTrace::gold. Either every trace carries gold
// or none does. Throws Error(kEmptyInput) for an empty corpus,
// Error(kMissingGold) for partial gold, Error(kInvalidArgument) for mixed
// task kinds or an empty delay set.
CorpusReport corpus_report(std::span<const IncrementalTrace> traces,
                           const ReportOptions& options);

// Mean of `values` summed in ascending order, so the result does not depend
// on the order values were produced in.
double order_independent_mean(std::vector<double> values);

struct CurveGroup {
  std::vector<double> mean_eo;       // index t-1 for absolute step t
  std::vector<std::size_t> support;  // sequences with length >= t
};

struct EoCurves {
  CurveGroup correct;
  CurveGroup incorrect;
};

// Mean cumulative EO per absolute step, split by whether the final output
// matches gold exactly. Throws Error(kMissingGold) naming the first sequence
// without gold.
EoCurves eo_over_time(std::span<const IncrementalTrace> traces);

}  // namespace increval
