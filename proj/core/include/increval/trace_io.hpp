#pragma once

// Trace files: JSON Lines, one trace per line:
//   {"sequence_id": "s1", "task": "tagging", "tokens": [...],
//    "gold": [...], "steps": [[...], ...]}
// "gold" is optional.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "increval/types.hpp"

namespace increval {

nlohmann::ordered_json trace_to_json(const IncrementalTrace& trace);

// Throws Error(kSchemaError) naming the field path, or Error(kInvalidTrace)
// naming the step when the decoded trace breaks a trace invariant.
IncrementalTrace trace_from_json(const nlohmann::json& value);

// Validates every trace before writing anything.
void write_traces(std::ostream& out, std::span<const IncrementalTrace> traces);

// Blank lines are skipped. Errors carry the 1-based line number.
std::vector<IncrementalTrace> read_traces(std::istream& in);

void write_traces_file(const std::string& path, std::span<const IncrementalTrace> traces);
std::vector<IncrementalTrace> read_traces_file(const std::string& path);

}  // namespace increval
