#include "increval/simulator.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "increval/error.hpp"
#include "text.hpp"

namespace increval {
namespace {

class LookupLabeler final : public Labeler {
 public:
  explicit LookupLabeler(LookupSpec spec) : spec_(std::move(spec)) {}

  Labels label(std::span<const std::string> tokens, TaskKind task) override {
    if (task == TaskKind::kClassification) {
      return tokens.empty() ? Labels{spec_.default_label} : Labels{lookup(tokens.back())};
    }
    Labels out;
    out.reserve(tokens.size());
    for (const auto& token : tokens) out.push_back(lookup(token));
    return out;
  }

 private:
  const Label& lookup(const std::string& token) const {
    const auto it = spec_.table.find(token);
    return it == spec_.table.end() ? spec_.default_label : it->second;
  }

  LookupSpec spec_;
};

class WindowLabeler final : public Labeler {
 public:
  explicit WindowLabeler(WindowSpec spec) : spec_(std::move(spec)) {
    const std::size_t width = spec_.left + spec_.right + 1;
    for (const auto& rule : spec_.rules) {
      if (rule.pattern.size() != width) {
        throw Error(ErrorCode::kInvalidArgument,
                    "window rule has " + std::to_string(rule.pattern.size()) +
                        " pattern entries, expected " + std::to_string(width));
      }
    }
  }

  Labels label(std::span<const std::string> tokens, TaskKind task) override {
    if (task == TaskKind::kClassification) {
      return tokens.empty() ? Labels{spec_.default_label}
                            : Labels{label_at(tokens, tokens.size() - 1)};
    }
    Labels out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) out.push_back(label_at(tokens, i));
    return out;
  }

 private:
  const Label& label_at(std::span<const std::string> tokens, std::size_t i) const {
    for (const auto& rule : spec_.rules) {
      if (matches(rule, tokens, i)) return rule.label;
    }
    return spec_.default_label;
  }

  bool matches(const WindowRule& rule, std::span<const std::string> tokens,
               std::size_t i) const {
    for (std::size_t k = 0; k < rule.pattern.size(); ++k) {
      const std::string& want = rule.pattern[k];
      if (want == WindowSpec::kWildcard) continue;
      // Window position i - left + k, which may fall outside the input.
      const std::size_t shifted = i + k;
      const bool inside = shifted >= spec_.left && shifted - spec_.left < tokens.size();
      const std::string_view seen =
          inside ? std::string_view(tokens[shifted - spec_.left]) : WindowSpec::kBoundary;
      if (seen != want) return false;
    }
    return true;
  }

  WindowSpec spec_;
};

nlohmann::json tokens_json(std::span<const std::string> tokens) {
  return nlohmann::json(std::vector<std::string>(tokens.begin(), tokens.end()));
}

bool is_string_array(const nlohmann::json& value) {
  if (!value.is_array()) return false;
  for (const auto& item : value) {
    if (!item.is_string()) return false;
  }
  return true;
}

class ExternalLabeler final : public Labeler {
 public:
  explicit ExternalLabeler(const EndpointSpec& spec) : endpoint_(spec) {}

  Labels label(std::span<const std::string> tokens, TaskKind task) override {
    nlohmann::json request;
    request["task"] = std::string(to_string(task));
    request["tokens"] = tokens_json(tokens);
    const nlohmann::json response = endpoint_.call(std::move(request));

    Labels labels;
    if (const auto it = response.find("labels"); it != response.end()) {
      if (!is_string_array(*it)) {
        throw Error(ErrorCode::kMalformedResponse, "labels must be an array of strings",
                    ErrorContext{std::nullopt, std::nullopt, "/labels", {}});
      }
      labels = it->get<Labels>();
    } else if (const auto single = response.find("label"); single != response.end()) {
      if (!single->is_string()) {
        throw Error(ErrorCode::kMalformedResponse, "label must be a string",
                    ErrorContext{std::nullopt, std::nullopt, "/label", {}});
      }
      labels.push_back(single->get<std::string>());
    } else {
      throw Error(ErrorCode::kMalformedResponse, "response has neither labels nor label");
    }
    const std::size_t expected = task == TaskKind::kTagging ? tokens.size() : 1;
    if (labels.size() != expected) {
      throw Error(ErrorCode::kLabelCountMismatch,
                  "label count mismatch: expected " + std::to_string(expected) + ", got " +
                      std::to_string(labels.size()));
    }
    return labels;
  }

 private:
  Endpoint endpoint_;
};

class EmptyContinuation final : public ContinuationGenerator {
 public:
  Tokens continue_prefix(std::span<const std::string>) override { return {}; }
};

class RepeatLastGenerator final : public ContinuationGenerator {
 public:
  Tokens continue_prefix(std::span<const std::string> prefix) override {
    if (prefix.empty()) return {};
    return {prefix.back()};
  }
};

class NGramGenerator final : public ContinuationGenerator {
 public:
  explicit NGramGenerator(NGramContinuation spec) : spec_(std::move(spec)) {
    if (!spec_.model) throw Error(ErrorCode::kInvalidArgument, "n-gram continuation has no model");
  }

  Tokens continue_prefix(std::span<const std::string> prefix) override {
    return spec_.model->continue_greedy(prefix, spec_.max_length);
  }

 private:
  NGramContinuation spec_;
};

class ExternalGenerator final : public ContinuationGenerator {
 public:
  explicit ExternalGenerator(const EndpointSpec& spec) : endpoint_(spec) {}

  Tokens continue_prefix(std::span<const std::string> prefix) override {
    nlohmann::json request;
    request["prefix"] = tokens_json(prefix);
    const nlohmann::json response = endpoint_.call(std::move(request));
    const auto it = response.find("continuation");
    if (it == response.end() || !is_string_array(*it)) {
      throw Error(ErrorCode::kMalformedResponse, "continuation must be an array of strings",
                  ErrorContext{std::nullopt, std::nullopt, "/continuation", {}});
    }
    return it->get<Tokens>();
  }

 private:
  Endpoint endpoint_;
};

Error parse_error(std::size_t line, const std::string& what) {
  return Error(ErrorCode::kParseError, what, ErrorContext{std::nullopt, line, {}, {}});
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  return in;
}

}  // namespace

std::unique_ptr<Labeler> make_labeler(const ProcessorSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::unique_ptr<Labeler> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LookupSpec>) {
          return std::make_unique<LookupLabeler>(s);
        } else if constexpr (std::is_same_v<T, WindowSpec>) {
          return std::make_unique<WindowLabeler>(s);
        } else {
          return std::make_unique<ExternalLabeler>(s.endpoint);
        }
      },
      spec);
}

std::unique_ptr<ContinuationGenerator> make_continuation(const ContinuationSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::unique_ptr<ContinuationGenerator> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NoContinuation>) {
          return std::make_unique<EmptyContinuation>();
        } else if constexpr (std::is_same_v<T, RepeatLastContinuation>) {
          return std::make_unique<RepeatLastGenerator>();
        } else if constexpr (std::is_same_v<T, NGramContinuation>) {
          return std::make_unique<NGramGenerator>(s);
        } else {
          return std::make_unique<ExternalGenerator>(s.endpoint);
        }
      },
      spec);
}

bool is_causal(const ProcessorSpec& spec) {
  if (std::holds_alternative<LookupSpec>(spec)) return true;
  if (const auto* window = std::get_if<WindowSpec>(&spec)) return window->right == 0;
  return false;
}

LookupSpec parse_lookup_spec(std::istream& in) {
  LookupSpec spec;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = text::split_tabs(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw parse_error(line_no, "expected token<TAB>label");
    }
    if (fields[0] == "<default>") {
      spec.default_label = fields[1];
    } else {
      spec.table[fields[0]] = fields[1];
    }
  }
  return spec;
}

WindowSpec parse_window_spec(std::istream& in) {
  WindowSpec spec;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, WindowRule>> rules;
  auto parse_span = [&](const std::string& text) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw parse_error(line_no, "invalid window span '" + text + "'");
    }
    return value;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = text::split_tabs(line);
    const std::string& key = fields[0];
    if (key == "left" && fields.size() == 2) {
      spec.left = parse_span(fields[1]);
    } else if (key == "right" && fields.size() == 2) {
      spec.right = parse_span(fields[1]);
    } else if (key == "default" && fields.size() == 2) {
      spec.default_label = fields[1];
    } else if (key == "rule" && fields.size() >= 3) {
      WindowRule rule;
      rule.pattern.assign(fields.begin() + 1, fields.end() - 1);
      rule.label = fields.back();
      rules.emplace_back(line_no, std::move(rule));
    } else {
      throw parse_error(line_no, "unrecognised window spec line");
    }
  }
  const std::size_t width = spec.left + spec.right + 1;
  for (auto& [rule_line, rule] : rules) {
    if (rule.pattern.size() != width) {
      throw parse_error(rule_line, "rule needs " + std::to_string(width) + " pattern entries");
    }
    spec.rules.push_back(std::move(rule));
  }
  return spec;
}

LookupSpec load_lookup_spec(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_lookup_spec(in);
}

WindowSpec load_window_spec(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_window_spec(in);
}

Tokens continue_sequence(const ContinuationSpec& spec, std::span<const std::string> prefix) {
  return make_continuation(spec)->continue_prefix(prefix);
}

IncrementalTrace run_incremental(const TokenSequence& tokens, TaskKind task, Labeler& labeler,
                                 ContinuationGenerator& continuation) {
  const std::size_t n = tokens.size();
  if (n == 0) {
    throw Error(ErrorCode::kEmptyInput, "cannot simulate an empty sequence",
                ErrorContext{std::nullopt, std::nullopt, {}, tokens.id});
  }
  IncrementalTrace trace;
  trace.sequence_id = tokens.id;
  trace.task = task;
  trace.tokens = tokens.tokens;
  trace.steps.reserve(n);

  for (std::size_t t = 1; t <= n; ++t) {
    try {
      const std::span<const std::string> prefix(tokens.tokens.data(), t);
      Tokens input(prefix.begin(), prefix.end());
      if (t < n) {
        const Tokens prophecy = continuation.continue_prefix(prefix);
        input.insert(input.end(), prophecy.begin(), prophecy.end());
      }
      Labels labels = labeler.label(input, task);
      const std::size_t expected = task == TaskKind::kTagging ? input.size() : 1;
      if (labels.size() != expected) {
        throw Error(ErrorCode::kLabelCountMismatch,
                    "label count mismatch: expected " + std::to_string(expected) + ", got " +
                        std::to_string(labels.size()));
      }
      if (task == TaskKind::kTagging) labels.resize(t);
      trace.steps.push_back(std::move(labels));
    } catch (const Error& e) {
      throw e.with_context(ErrorContext{t, std::nullopt, {}, tokens.id});
    }
  }
  return trace;
}

IncrementalTrace run_incremental(const TokenSequence& tokens, TaskKind task,
                                 const ProcessorSpec& processor,
                                 const ContinuationSpec& continuation) {
  auto labeler = make_labeler(processor);
  auto generator = make_continuation(continuation);
  return run_incremental(tokens, task, *labeler, *generator);
}

}  // namespace increval
