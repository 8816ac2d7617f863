#pragma once

// Diachronic metrics over a single incremental trace.
//
//   edit overhead (EO)       unnecessary edits / all edits
//   correction time (CT)     sum of per-token settle delays / sum of
//                            per-token revision opportunities
//   relative correctness (RC) share of emissions that are prefixes of the
//                            final output
//
// These functions compute each value directly from the stored trace through
// apply_delay() and edit_scripts(). StreamingEvaluator (streaming.hpp) is the
// single-pass equivalent used for corpus reports.

#include <vector>

#include "increval/editops.hpp"
#include "increval/types.hpp"

namespace increval {

// Necessary edits for a sequence: one addition per token for tagging, one
// for classification.
std::size_t necessary_edits(TaskKind task, std::size_t length);

Ratio edit_overhead(const IncrementalTrace& trace, Delay delay);

// Defined on the undelayed trace only. Zero for single-token sequences.
Ratio correction_time_score(const IncrementalTrace& trace);

Ratio relative_correctness(const IncrementalTrace& trace, Delay delay);

// Cumulative undelayed EO after each step: substitutions so far over all
// edits so far (0 before any edit). The last entry equals
// edit_overhead(trace, Delay{0}).
std::vector<Ratio> partial_edit_overhead(const IncrementalTrace& trace);

// Earliest step from which the label at `position` (1-based) never changes,
// on the undelayed trace.
std::size_t settle_step(const IncrementalTrace& trace, std::size_t position);

}  // namespace increval
