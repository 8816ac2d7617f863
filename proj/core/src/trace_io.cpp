#include "increval/trace_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "increval/error.hpp"

namespace increval {
namespace {

Error schema_error(const std::string& field, const std::string& what) {
  return Error(ErrorCode::kSchemaError, what, ErrorContext{std::nullopt, std::nullopt, field, {}});
}

const nlohmann::json& require_field(const nlohmann::json& object, const char* name) {
  const auto it = object.find(name);
  if (it == object.end()) {
    throw schema_error(std::string("/") + name, std::string("missing field \"") + name + "\"");
  }
  return *it;
}

std::vector<std::string> string_array(const nlohmann::json& value, const std::string& field) {
  if (!value.is_array()) throw schema_error(field, "expected an array of strings");
  std::vector<std::string> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_string()) {
      throw schema_error(field + "/" + std::to_string(i), "expected a string");
    }
    out.push_back(value[i].get<std::string>());
  }
  return out;
}

}  // namespace

nlohmann::ordered_json trace_to_json(const IncrementalTrace& trace) {
  nlohmann::ordered_json out;
  out["sequence_id"] = trace.sequence_id;
  out["task"] = std::string(to_string(trace.task));
  out["tokens"] = trace.tokens;
  if (trace.gold) out["gold"] = *trace.gold;
  out["steps"] = trace.steps;
  return out;
}

IncrementalTrace trace_from_json(const nlohmann::json& value) {
  if (!value.is_object()) throw schema_error("", "expected a JSON object");
  IncrementalTrace trace;

  const auto& id = require_field(value, "sequence_id");
  if (!id.is_string()) throw schema_error("/sequence_id", "expected a string");
  trace.sequence_id = id.get<std::string>();

  const auto& task = require_field(value, "task");
  if (!task.is_string()) throw schema_error("/task", "expected a string");
  try {
    trace.task = parse_task_kind(task.get<std::string>());
  } catch (const Error& e) {
    throw schema_error("/task", e.detail());
  }

  trace.tokens = string_array(require_field(value, "tokens"), "/tokens");
  if (const auto gold = value.find("gold"); gold != value.end()) {
    trace.gold = string_array(*gold, "/gold");
  }

  const auto& steps = require_field(value, "steps");
  if (!steps.is_array()) throw schema_error("/steps", "expected an array of label arrays");
  trace.steps.reserve(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    trace.steps.push_back(string_array(steps[i], "/steps/" + std::to_string(i)));
  }

  require_valid(trace);
  return trace;
}

void write_traces(std::ostream& out, std::span<const IncrementalTrace> traces) {
  for (const auto& trace : traces) require_valid(trace);
  for (const auto& trace : traces) out << trace_to_json(trace).dump() << '\n';
}

std::vector<IncrementalTrace> read_traces(std::istream& in) {
  std::vector<IncrementalTrace> traces;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const ErrorContext at_line{std::nullopt, line_no, {}, {}};
    const nlohmann::json value = nlohmann::json::parse(line, nullptr, false);
    if (value.is_discarded()) throw Error(ErrorCode::kParseError, "invalid JSON", at_line);
    try {
      traces.push_back(trace_from_json(value));
    } catch (const Error& e) {
      throw e.with_context(at_line);
    }
  }
  return traces;
}

void write_traces_file(const std::string& path, std::span<const IncrementalTrace> traces) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  write_traces(out, traces);
}

std::vector<IncrementalTrace> read_traces_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read traces " + path);
  return read_traces(in);
}

}  // namespace increval
