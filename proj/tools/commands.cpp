#include "commands.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "increval/bleu.hpp"
#include "increval/corpus.hpp"
#include "increval/editops.hpp"
#include "increval/error.hpp"
#include "increval/metrics.hpp"
#include "increval/report.hpp"
#include "increval/trace_io.hpp"

namespace increval::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

// Runs fn with a stream bound to `path`, or to `fallback` for "-".
template <typename Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + path);
  fn(file);
  if (!file) throw Error(ErrorCode::kIo, "failed writing " + path);
}

int fail(std::ostream& err, const char* command, const std::exception& e) {
  err << "increval " << command << ": " << e.what() << '\n';
  return kExitUsage;
}

std::string after_prefix(const std::string& text, std::string_view prefix) {
  return text.substr(prefix.size());
}

// Files a processor or prophecy argument refers to, for the run manifest.
std::optional<std::string> referenced_file(const std::string& arg) {
  for (std::string_view prefix : {"lookup:", "window:", "ngram:"}) {
    if (arg.starts_with(prefix)) return after_prefix(arg, prefix);
  }
  return std::nullopt;
}

ordered_json describe_input(const std::string& path) {
  ordered_json entry;
  entry["path"] = path;
  entry["sha256"] = sha256_file(path);
  return entry;
}

ordered_json sequence_json(const SequenceMetrics& m) {
  ordered_json seq;
  seq["sequence_id"] = m.sequence_id;
  seq["length"] = m.length;
  ordered_json per_delay = ordered_json::array();
  for (const auto& d : m.per_delay) {
    ordered_json row;
    row["delay"] = d.delay.value;
    row["eo"] = d.eo.value();
    row["rc"] = d.rc.value();
    row["substitutions"] = d.substitutions;
    per_delay.push_back(std::move(row));
  }
  seq["per_delay"] = std::move(per_delay);
  seq["ct"] = m.ct.value();
  if (m.final_correct) seq["final_correct"] = *m.final_correct;
  return seq;
}

ordered_json summary_json(const CorpusMetrics& s) {
  ordered_json summary;
  summary["task"] = std::string(to_string(s.task));
  summary["sequences"] = s.sequences;
  summary["tokens"] = s.tokens;
  ordered_json per_delay = ordered_json::array();
  for (const auto& d : s.per_delay) {
    ordered_json row;
    row["delay"] = d.delay.value;
    row["mean_eo"] = d.mean_eo;
    row["mean_rc"] = d.mean_rc;
    per_delay.push_back(std::move(row));
  }
  summary["per_delay"] = std::move(per_delay);
  summary["mean_ct"] = s.mean_ct;
  if (s.gold) {
    ordered_json gold;
    gold["metric"] = std::string(to_string(s.gold->metric));
    gold["score"] = s.gold->score;
    if (s.gold->spans) {
      gold["precision"] = s.gold->spans->precision();
      gold["recall"] = s.gold->spans->recall();
      gold["predicted_spans"] = s.gold->spans->predicted;
      gold["gold_spans"] = s.gold->spans->gold;
      gold["matched_spans"] = s.gold->spans->matched;
    } else {
      gold["correct"] = s.gold->correct_units;
      gold["total"] = s.gold->total_units;
    }
    gold["sentence_accuracy"] = s.gold->sentence_accuracy;
    summary["gold"] = std::move(gold);
  }
  return summary;
}

void attach_gold(std::vector<IncrementalTrace>& traces, const Corpus& corpus) {
  if (corpus.entries.size() != traces.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "gold corpus has " + std::to_string(corpus.entries.size()) +
                    " sentences but the trace file has " + std::to_string(traces.size()));
  }
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const CorpusEntry& entry = corpus.entries[i];
    if (entry.tokens.tokens != traces[i].tokens) {
      throw Error(ErrorCode::kLengthMismatch, "gold sentence tokens differ from the trace",
                  ErrorContext{std::nullopt, std::nullopt, {}, traces[i].sequence_id});
    }
    traces[i].gold = entry.gold ? std::optional<Labels>(entry.gold->labels) : std::nullopt;
    require_valid(traces[i]);
  }
}

void write_curves(std::ostream& out, const EoCurves& curves) {
  out << "step,group,mean_eo,support\n";
  auto rows = [&](const CurveGroup& group, const char* name) {
    for (std::size_t t = 0; t < group.mean_eo.size(); ++t) {
      out << t + 1 << ',' << name << ',' << format_double(group.mean_eo[t]) << ','
          << group.support[t] << '\n';
    }
  };
  rows(curves.correct, "correct");
  rows(curves.incorrect, "incorrect");
}

void write_metric_table(std::ostream& out, const CorpusMetrics& summary) {
  out << "metric,delay,value\n";
  for (const auto& d : summary.per_delay) {
    out << "eo," << d.delay.value << ',' << format_double(d.mean_eo) << '\n';
  }
  for (const auto& d : summary.per_delay) {
    out << "rc," << d.delay.value << ',' << format_double(d.mean_rc) << '\n';
  }
  out << "ct,0," << format_double(summary.mean_ct) << '\n';
}

std::vector<std::pair<Tokens, Tokens>> read_pairs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read pair file " + path);
  std::vector<std::pair<Tokens, Tokens>> pairs;
  std::string line;
  std::size_t line_no = 0;
  auto split = [](std::string_view s) {
    Tokens out;
    std::istringstream words{std::string(s)};
    for (std::string w; words >> w;) out.push_back(w);
    return out;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kParseError, "expected candidate<TAB>reference",
                  ErrorContext{std::nullopt, line_no, {}, {}});
    }
    pairs.emplace_back(split(std::string_view(line).substr(0, tab)),
                       split(std::string_view(line).substr(tab + 1)));
  }
  return pairs;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return ec == std::errc{} ? std::string(buffer, end) : std::string("nan");
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char chunk[1 << 14];
  while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), chunk, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &length);
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

ProcessorSpec parse_processor(const std::string& text, std::chrono::milliseconds timeout) {
  if (text.starts_with("lookup:")) return load_lookup_spec(after_prefix(text, "lookup:"));
  if (text.starts_with("window:")) return load_window_spec(after_prefix(text, "window:"));
  if (text.starts_with("external:") || text.starts_with("tcp:")) {
    EndpointSpec endpoint = parse_endpoint(text);
    endpoint.timeout = timeout;
    return ExternalProcessorSpec{endpoint};
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown processor '" + text +
                  "' (expected lookup:, window:, external: or tcp:)");
}

ContinuationSpec parse_continuation(const std::string& text, std::size_t max_length,
                                    std::chrono::milliseconds timeout) {
  if (text == "none") return NoContinuation{};
  if (text == "repeat-last") return RepeatLastContinuation{};
  if (text.starts_with("ngram:")) {
    auto model = std::make_shared<const NGramModel>(
        NGramModel::load_file(after_prefix(text, "ngram:")));
    return NGramContinuation{std::move(model), max_length};
  }
  if (text.starts_with("external:") || text.starts_with("tcp:")) {
    EndpointSpec endpoint = parse_endpoint(text);
    endpoint.timeout = timeout;
    return ExternalContinuation{endpoint};
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown prophecy '" + text +
                  "' (expected none, repeat-last, ngram:, external: or tcp:)");
}

std::vector<Delay> parse_delays(const std::string& text) {
  std::vector<Delay> delays;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw Error(ErrorCode::kInvalidArgument, "invalid delay list '" + text + "'");
    }
    delays.push_back(Delay{value});
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return delays;
}

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
  const std::chrono::milliseconds timeout(options.timeout_ms);
  TaskKind task{};
  Corpus corpus;
  ProcessorSpec processor;
  ContinuationSpec continuation;
  std::vector<std::unique_ptr<Labeler>> labelers;
  const unsigned jobs = std::max(options.jobs, 1u);
  try {
    task = parse_task_kind(options.task);
    corpus = read_corpus_file(options.corpus, task);
    processor = parse_processor(options.processor, timeout);
    continuation = parse_continuation(options.prophecy, options.max_continuation, timeout);
    const std::size_t workers = std::min<std::size_t>(jobs, corpus.entries.size());
    for (std::size_t w = 0; w < workers; ++w) labelers.push_back(make_labeler(processor));
  } catch (const std::exception& e) {
    return fail(err, "simulate", e);
  }

  const std::size_t count = corpus.entries.size();
  std::vector<std::optional<IncrementalTrace>> traces(count);
  std::vector<std::string> errors(count);
  std::atomic<std::size_t> next{0};

  auto work = [&](std::unique_ptr<Labeler> labeler) {
    std::unique_ptr<ContinuationGenerator> generator;
    for (std::size_t i = next++; i < count; i = next++) {
      const CorpusEntry& entry = corpus.entries[i];
      try {
        if (!labeler) labeler = make_labeler(processor);
        if (!generator) generator = make_continuation(continuation);
        IncrementalTrace trace = run_incremental(entry.tokens, task, *labeler, *generator);
        if (entry.gold) trace.gold = entry.gold->labels;
        traces[i] = std::move(trace);
      } catch (const std::exception& e) {
        errors[i] = e.what();
        // An endpoint may be out of step after a failure; start fresh.
        labeler.reset();
        generator.reset();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (auto& labeler : labelers) pool.emplace_back(work, std::move(labeler));
  }

  std::vector<IncrementalTrace> written;
  ordered_json failures = ordered_json::array();
  for (std::size_t i = 0; i < count; ++i) {
    if (traces[i]) {
      written.push_back(std::move(*traces[i]));
    } else {
      ordered_json failure;
      failure["index"] = i + 1;
      failure["sequence_id"] = corpus.entries[i].tokens.id;
      failure["error"] = errors[i];
      failures.push_back(std::move(failure));
    }
  }

  try {
    write_traces_file(options.out, written);

    ordered_json manifest;
    manifest["command"] = "simulate";
    ordered_json config;
    config["corpus"] = options.corpus;
    config["task"] = options.task;
    config["processor"] = options.processor;
    config["prophecy"] = options.prophecy;
    config["max_continuation"] = options.max_continuation;
    config["timeout_ms"] = options.timeout_ms;
    config["jobs"] = jobs;
    config["out"] = options.out;
    manifest["config"] = std::move(config);
    ordered_json inputs = ordered_json::array();
    inputs.push_back(describe_input(options.corpus));
    for (const std::string* arg : {&options.processor, &options.prophecy}) {
      if (auto file = referenced_file(*arg)) inputs.push_back(describe_input(*file));
    }
    manifest["inputs"] = std::move(inputs);
    manifest["sentences"] = count;
    manifest["traces_written"] = written.size();
    manifest["failures"] = failures;

    const std::string manifest_path =
        options.manifest.empty() ? options.out + ".manifest.json" : options.manifest;
    with_output(manifest_path, out, [&](std::ostream& o) { o << manifest.dump(2) << '\n'; });
  } catch (const std::exception& e) {
    return fail(err, "simulate", e);
  }

  for (const auto& failure : failures) {
    err << "increval simulate: sentence " << failure["sequence_id"].get<std::string>()
        << " failed: " << failure["error"].get<std::string>() << '\n';
  }
  return failures.empty() ? kExitOk : kExitPartialFailure;
}

int cmd_evaluate(const EvaluateOptions& options, std::ostream& out, std::ostream& err) {
  try {
    std::vector<IncrementalTrace> traces = read_traces_file(options.traces);
    ReportOptions report_options;
    report_options.delays = parse_delays(options.delays);
    report_options.jobs = options.jobs;
    if (options.scheme != "auto") report_options.scheme = parse_label_scheme(options.scheme);

    if (!options.gold.empty()) {
      if (traces.empty()) throw Error(ErrorCode::kEmptyInput, "no traces to evaluate");
      attach_gold(traces, read_corpus_file(options.gold, traces.front().task));
    }
    const CorpusReport report = corpus_report(traces, report_options);

    ordered_json doc;
    doc["summary"] = summary_json(report.summary);
    ordered_json sequences = ordered_json::array();
    for (const auto& seq : report.sequences) sequences.push_back(sequence_json(seq));
    doc["sequences"] = std::move(sequences);
    with_output(options.report, out, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });

    if (!options.csv.empty()) {
      with_output(options.csv, out,
                  [&](std::ostream& o) { write_metric_table(o, report.summary); });
    }
    if (!options.curves.empty()) {
      const EoCurves curves = eo_over_time(traces);
      with_output(options.curves, out, [&](std::ostream& o) { write_curves(o, curves); });
    }
  } catch (const std::exception& e) {
    return fail(err, "evaluate", e);
  }
  return kExitOk;
}

int cmd_truncate(const TruncateOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const Corpus corpus = read_corpus_file(options.corpus, parse_task_kind(options.task));
    const Corpus truncated = truncate_corpus(corpus, options.seed);
    with_output(options.out, out, [&](std::ostream& o) {
      if (truncated.task == TaskKind::kTagging) {
        write_conll(o, truncated);
      } else {
        write_classification_tsv(o, truncated);
      }
    });
  } catch (const std::exception& e) {
    return fail(err, "truncate", e);
  }
  return kExitOk;
}

int cmd_diff(const DiffOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const std::vector<IncrementalTrace> traces = read_traces_file(options.traces);
    const IncrementalTrace* trace = nullptr;
    for (const auto& t : traces) {
      if (options.id.empty() || t.sequence_id == options.id) {
        trace = &t;
        break;
      }
    }
    if (trace == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  options.id.empty() ? "trace file is empty"
                                     : "no sequence with id '" + options.id + "'");
    }
    const Delay delay{options.delay};
    const DelayedView view = apply_delay(*trace, delay);
    const std::vector<EditScript> scripts = edit_scripts(view);

    out << "sequence " << trace->sequence_id << " (" << to_string(trace->task)
        << ", n=" << trace->size() << ", delay " << delay.value << ")\n";
    auto script = scripts.begin();
    for (std::size_t t = 1; t <= view.emissions.size(); ++t) {
      out << "t=" << t << "  " << trace->tokens[t - 1] << "  [";
      const StepOutput& emission = view.emissions[t - 1];
      for (std::size_t i = 0; i < emission.size(); ++i) out << (i ? " " : "") << emission[i];
      out << "]";
      if (script != scripts.end() && script->step == t) {
        for (const auto& edit : script->edits) out << "  " << to_string(edit);
        ++script;
      }
      out << '\n';
    }
    const EditCounts counts = count_edits(scripts);
    out << "additions=" << counts.additions << " substitutions=" << counts.substitutions
        << " eo=" << format_double(edit_overhead(*trace, delay).value())
        << " rc=" << format_double(relative_correctness(*trace, delay).value()) << '\n';
  } catch (const std::exception& e) {
    return fail(err, "diff", e);
  }
  return kExitOk;
}

int cmd_prophecy_eval(const ProphecyEvalOptions& options, std::ostream& out, std::ostream& err) {
  try {
    std::vector<Tokens> candidates;
    std::vector<Tokens> references;
    if (!options.pairs.empty()) {
      for (auto& [candidate, reference] : read_pairs(options.pairs)) {
        candidates.push_back(std::move(candidate));
        references.push_back(std::move(reference));
      }
    } else if (!options.corpus.empty()) {
      const Corpus corpus = read_corpus_file(options.corpus, parse_task_kind(options.task));
      const ContinuationSpec spec =
          parse_continuation(options.prophecy, options.max_continuation,
                             std::chrono::milliseconds(options.timeout_ms));
      auto generator = make_continuation(spec);
      for (const auto& entry : corpus.entries) {
        const Tokens& tokens = entry.tokens.tokens;
        for (std::size_t t = 1; t < tokens.size(); ++t) {
          candidates.push_back(generator->continue_prefix(std::span(tokens.data(), t)));
          references.emplace_back(tokens.begin() + static_cast<std::ptrdiff_t>(t), tokens.end());
        }
      }
    } else {
      throw Error(ErrorCode::kInvalidArgument, "give either --pairs or --corpus");
    }

    const BleuStats stats = corpus_bleu_stats(candidates, references);
    ordered_json doc;
    doc["pairs"] = candidates.size();
    doc["bleu"] = stats.score;
    doc["brevity_penalty"] = stats.brevity_penalty;
    doc["max_order"] = stats.max_order;
    ordered_json precisions = ordered_json::array();
    for (std::size_t k = 0; k < stats.max_order; ++k) {
      precisions.push_back(stats.totals[k] == 0 ? 0.0
                                                : static_cast<double>(stats.matches[k]) /
                                                      static_cast<double>(stats.totals[k]));
    }
    doc["precisions"] = std::move(precisions);
    doc["candidate_length"] = stats.candidate_length;
    doc["reference_length"] = stats.reference_length;
    with_output(options.out, out, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
  } catch (const std::exception& e) {
    return fail(err, "prophecy-eval", e);
  }
  return kExitOk;
}

int cmd_train_ngram(const TrainNGramOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const Corpus corpus = read_corpus_file(options.corpus, parse_task_kind(options.task));
    std::vector<Tokens> sentences;
    sentences.reserve(corpus.entries.size());
    for (const auto& entry : corpus.entries) sentences.push_back(entry.tokens.tokens);
    const NGramModel model = NGramModel::train(sentences, options.order);
    model.save_file(options.out);
    out << "trained order-" << options.order << " model on " << sentences.size()
        << " sentences -> " << options.out << '\n';
  } catch (const std::exception& e) {
    return fail(err, "train-ngram", e);
  }
  return kExitOk;
}

}  // namespace increval::cli
