#include "increval/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <random>

#include "increval/error.hpp"
#include "text.hpp"

namespace increval {
namespace {

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

Error parse_error(std::size_t line, const std::string& what) {
  return Error(ErrorCode::kParseError, what, ErrorContext{std::nullopt, line, {}, {}});
}

std::string sequence_id(std::size_t index) { return "s" + std::to_string(index + 1); }

LabelScheme scheme_of(const std::vector<CorpusEntry>& entries) {
  for (const auto& entry : entries) {
    if (!entry.gold) continue;
    for (const auto& label : entry.gold->labels) {
      if (!is_bio_label(label)) return LabelScheme::kPlain;
    }
  }
  return LabelScheme::kBio;
}

std::uint32_t low_word(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
std::uint32_t high_word(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

}  // namespace

void validate_corpus(const Corpus& corpus) {
  for (const auto& entry : corpus.entries) {
    const ErrorContext ctx{std::nullopt, std::nullopt, {}, entry.tokens.id};
    if (entry.tokens.tokens.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "sentence has no tokens", ctx);
    }
    if (!entry.gold) continue;
    const std::size_t expected =
        corpus.task == TaskKind::kTagging ? entry.tokens.size() : std::size_t{1};
    if (entry.gold->labels.size() != expected) {
      throw Error(ErrorCode::kInvalidArgument,
                  "gold has " + std::to_string(entry.gold->labels.size()) +
                      " labels, expected " + std::to_string(expected),
                  ctx);
    }
    if (entry.gold->scheme == LabelScheme::kBio) {
      for (const auto& label : entry.gold->labels) {
        if (!is_bio_label(label)) {
          throw Error(ErrorCode::kInvalidArgument, "'" + label + "' is not a BIO label", ctx);
        }
      }
    }
  }
}

Corpus read_conll(std::istream& in) {
  Corpus corpus;
  corpus.task = TaskKind::kTagging;
  CorpusEntry current;
  current.gold.emplace();
  auto flush = [&] {
    if (current.tokens.tokens.empty()) return;
    current.tokens.id = sequence_id(corpus.entries.size());
    corpus.entries.push_back(std::move(current));
    current = CorpusEntry{};
    current.gold.emplace();
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    text::strip_cr(line);
    if (is_blank(line)) {
      flush();
      continue;
    }
    auto fields = text::split_whitespace(line);
    if (fields.size() < 2) {
      throw parse_error(line_no, "expected a token and a label column");
    }
    current.tokens.tokens.push_back(std::move(fields.front()));
    current.gold->labels.push_back(std::move(fields.back()));
  }
  flush();
  if (corpus.entries.empty()) throw Error(ErrorCode::kEmptyInput, "corpus has no sentences");

  corpus.scheme = scheme_of(corpus.entries);
  for (auto& entry : corpus.entries) entry.gold->scheme = corpus.scheme;
  return corpus;
}

void write_conll(std::ostream& out, const Corpus& corpus) {
  if (corpus.task != TaskKind::kTagging) {
    throw Error(ErrorCode::kInvalidArgument, "column format holds tagging corpora only");
  }
  for (const auto& entry : corpus.entries) {
    if (!entry.gold) {
      throw Error(ErrorCode::kInvalidArgument, "column format needs gold labels",
                  ErrorContext{std::nullopt, std::nullopt, {}, entry.tokens.id});
    }
    for (std::size_t i = 0; i < entry.tokens.size(); ++i) {
      out << entry.tokens.tokens[i] << '\t' << entry.gold->labels.at(i) << '\n';
    }
    out << '\n';
  }
}

Corpus read_classification_tsv(std::istream& in) {
  Corpus corpus;
  corpus.task = TaskKind::kClassification;
  corpus.scheme = LabelScheme::kPlain;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    text::strip_cr(line);
    if (is_blank(line)) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw parse_error(line_no, "expected label<TAB>tokens");
    }
    CorpusEntry entry;
    entry.tokens.id = sequence_id(corpus.entries.size());
    entry.tokens.tokens = text::split_whitespace(std::string_view(line).substr(tab + 1));
    if (entry.tokens.tokens.empty()) throw parse_error(line_no, "sentence has no tokens");
    entry.gold = GoldAnnotation{{line.substr(0, tab)}, LabelScheme::kPlain};
    corpus.entries.push_back(std::move(entry));
  }
  if (corpus.entries.empty()) throw Error(ErrorCode::kEmptyInput, "corpus has no sentences");
  return corpus;
}

void write_classification_tsv(std::ostream& out, const Corpus& corpus) {
  for (const auto& entry : corpus.entries) {
    if (!entry.gold || entry.gold->labels.size() != 1) {
      throw Error(ErrorCode::kInvalidArgument, "classification entries need one gold label",
                  ErrorContext{std::nullopt, std::nullopt, {}, entry.tokens.id});
    }
    out << entry.gold->labels.front() << '\t';
    for (std::size_t i = 0; i < entry.tokens.size(); ++i) {
      if (i > 0) out << ' ';
      out << entry.tokens.tokens[i];
    }
    out << '\n';
  }
}

Corpus read_corpus_file(const std::string& path, TaskKind task) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read corpus " + path);
  return task == TaskKind::kTagging ? read_conll(in) : read_classification_tsv(in);
}

void write_corpus_file(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write corpus " + path);
  if (corpus.task == TaskKind::kTagging) {
    write_conll(out, corpus);
  } else {
    write_classification_tsv(out, corpus);
  }
}

std::size_t truncation_length(std::uint64_t seed, std::size_t index, std::size_t n) {
  if (n <= 1) return n;
  std::seed_seq seq{low_word(seed), high_word(seed), low_word(index), high_word(index)};
  std::mt19937_64 engine(seq);
  return std::uniform_int_distribution<std::size_t>(1, n)(engine);
}

Corpus truncate_corpus(const Corpus& corpus, std::uint64_t seed) {
  Corpus out = corpus;
  for (std::size_t i = 0; i < out.entries.size(); ++i) {
    CorpusEntry& entry = out.entries[i];
    const std::size_t keep = truncation_length(seed, i, entry.tokens.size());
    entry.tokens.tokens.resize(keep);
    if (corpus.task == TaskKind::kTagging && entry.gold) entry.gold->labels.resize(keep);
  }
  return out;
}

}  // namespace increval
