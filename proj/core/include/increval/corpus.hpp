#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "increval/types.hpp"

namespace increval {

struct CorpusEntry {
  TokenSequence tokens;
  std::optional<GoldAnnotation> gold;

  friend bool operator==(const CorpusEntry&, const CorpusEntry&) = default;
};

struct Corpus {
  TaskKind task = TaskKind::kTagging;
  LabelScheme scheme = LabelScheme::kPlain;
  std::vector<CorpusEntry> entries;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// Checks task-kind consistency of every gold annotation and, under the BIO
// scheme, the label grammar. Throws Error(kInvalidArgument).
void validate_corpus(const Corpus& corpus);

// Column format: one token per line, columns split by tabs or runs of
// spaces, token first and label last; a blank line ends a sentence.
// Sequence ids are "s1", "s2", ... in reading order. The scheme is BIO when
// every label fits the BIO grammar. Throws Error(kParseError) with the line
// number, or Error(kEmptyInput).
Corpus read_conll(std::istream& in);
void write_conll(std::ostream& out, const Corpus& corpus);

// One sentence per line: "label<TAB>token token ...".
Corpus read_classification_tsv(std::istream& in);
void write_classification_tsv(std::ostream& out, const Corpus& corpus);

// Dispatch on task kind; throw Error(kIo) when the file cannot be opened.
Corpus read_corpus_file(const std::string& path, TaskKind task);
void write_corpus_file(const std::string& path, const Corpus& corpus);

// Cuts each sentence to a length drawn uniformly from 1..n with a generator
// seeded by (seed, sentence index). Tagging gold is cut alongside;
// classification gold is kept.
Corpus truncate_corpus(const Corpus& corpus, std::uint64_t seed);

// The length truncate_corpus() keeps for sentence `index` of length n.
std::size_t truncation_length(std::uint64_t seed, std::size_t index, std::size_t n);

}  // namespace increval
