#pragma once

// Subcommand implementations behind the increval CLI. Each returns the
// process exit status: 0 on success, 1 when some sentences failed, 2 for
// unusable inputs or arguments.

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "increval/simulator.hpp"
#include "increval/types.hpp"

namespace increval::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartialFailure = 1;
inline constexpr int kExitUsage = 2;

struct SimulateOptions {
  std::string corpus;
  std::string task = "tagging";
  std::string processor;
  std::string prophecy = "none";
  std::size_t max_continuation = 20;
  std::string out;
  std::string manifest;  // defaults to <out>.manifest.json
  unsigned jobs = 1;
  std::int64_t timeout_ms = 30000;
};

struct EvaluateOptions {
  std::string traces;
  std::string delays = "0,1,2";
  std::string report = "-";
  std::string csv;
  std::string gold;
  std::string curves;
  std::string scheme = "auto";
  unsigned jobs = 1;
};

struct TruncateOptions {
  std::string corpus;
  std::string task = "tagging";
  std::uint64_t seed = 0;
  std::string out;
};

struct DiffOptions {
  std::string traces;
  std::string id;
  std::size_t delay = 0;
};

struct ProphecyEvalOptions {
  std::string pairs;
  std::string corpus;
  std::string task = "tagging";
  std::string prophecy = "none";
  std::size_t max_continuation = 20;
  std::int64_t timeout_ms = 30000;
  std::string out = "-";
};

struct TrainNGramOptions {
  std::string corpus;
  std::string task = "tagging";
  std::size_t order = 3;
  std::string out;
};

// "lookup:<file>", "window:<file>", "external:<command>", "tcp:<host>:<port>".
ProcessorSpec parse_processor(const std::string& text, std::chrono::milliseconds timeout);
// "none", "repeat-last", "ngram:<model file>", "external:<command>",
// "tcp:<host>:<port>".
ContinuationSpec parse_continuation(const std::string& text, std::size_t max_length,
                                    std::chrono::milliseconds timeout);
// Comma-separated non-negative integers, e.g. "0,1,2".
std::vector<Delay> parse_delays(const std::string& text);

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateOptions& options, std::ostream& out, std::ostream& err);
int cmd_truncate(const TruncateOptions& options, std::ostream& out, std::ostream& err);
int cmd_diff(const DiffOptions& options, std::ostream& out, std::ostream& err);
int cmd_prophecy_eval(const ProphecyEvalOptions& options, std::ostream& out, std::ostream& err);
int cmd_train_ngram(const TrainNGramOptions& options, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_file(const std::string& path);
// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

}  // namespace increval::cli
