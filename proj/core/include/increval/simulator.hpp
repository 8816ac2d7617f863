#pragma once

// Restart-incremental simulation: a non-incremental labeler is re-run on
// every prefix of the input, optionally extended with a prophecy (a guessed
// continuation), and the labels for the consumed tokens are recorded.

#include <map>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "increval/ngram.hpp"
#include "increval/protocol.hpp"
#include "increval/types.hpp"

namespace increval {

// Labels a complete input. Tagging returns one label per token,
// classification exactly one label.
class Labeler {
 public:
  virtual ~Labeler() = default;
  virtual Labels label(std::span<const std::string> tokens, TaskKind task) = 0;
};

class ContinuationGenerator {
 public:
  virtual ~ContinuationGenerator() = default;
  virtual Tokens continue_prefix(std::span<const std::string> prefix) = 0;
};

// Token -> label table. Context-free, hence causal.
struct LookupSpec {
  std::map<std::string, Label, std::less<>> table;
  Label default_label = "O";
};

// Pattern over the window [i-left, i+right] around token i. Pattern entries
// are literal tokens, kWildcard (matches anything) or kBoundary (matches a
// position outside the current input).
struct WindowRule {
  Tokens pattern;
  Label label;
};

struct WindowSpec {
  static constexpr std::string_view kWildcard = "*";
  static constexpr std::string_view kBoundary = "<none>";

  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<WindowRule> rules;  // first match wins
  Label default_label = "O";
};

struct ExternalProcessorSpec {
  EndpointSpec endpoint;
};

using ProcessorSpec = std::variant<LookupSpec, WindowSpec, ExternalProcessorSpec>;

struct NoContinuation {};
struct RepeatLastContinuation {};
struct NGramContinuation {
  std::shared_ptr<const NGramModel> model;
  std::size_t max_length = 20;
};
struct ExternalContinuation {
  EndpointSpec endpoint;
};

using ContinuationSpec =
    std::variant<NoContinuation, RepeatLastContinuation, NGramContinuation, ExternalContinuation>;

// Lookup and Window processors classify a sequence with the label of its
// last input token. External processors are started or connected here.
std::unique_ptr<Labeler> make_labeler(const ProcessorSpec& spec);
std::unique_ptr<ContinuationGenerator> make_continuation(const ContinuationSpec& spec);

// True for Lookup and for Window with right == 0.
bool is_causal(const ProcessorSpec& spec);

// Lookup file: "token<TAB>label" lines; a "<default><TAB>label" line sets the
// fallback label. Window file: "left<TAB>a", "right<TAB>b",
// "default<TAB>label" and "rule<TAB>p1<TAB>...<TAB>p(a+b+1)<TAB>label" lines.
// Blank lines are skipped. Throw Error(kParseError) with the line number.
LookupSpec parse_lookup_spec(std::istream& in);
WindowSpec parse_window_spec(std::istream& in);
LookupSpec load_lookup_spec(const std::string& path);
WindowSpec load_window_spec(const std::string& path);

// One-shot continuation, mainly for tests and the CLI.
Tokens continue_sequence(const ContinuationSpec& spec, std::span<const std::string> prefix);

// Runs the labeler on every prefix (plus prophecy, except at the final
// step). Errors are rethrown with the failing step and sequence id.
IncrementalTrace run_incremental(const TokenSequence& tokens, TaskKind task, Labeler& labeler,
                                 ContinuationGenerator& continuation);

IncrementalTrace run_incremental(const TokenSequence& tokens, TaskKind task,
                                 const ProcessorSpec& processor,
                                 const ContinuationSpec& continuation);

}  // namespace increval
