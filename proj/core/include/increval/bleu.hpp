#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "increval/types.hpp"

namespace increval {

inline constexpr std::size_t kMaxBleuOrder = 4;

struct BleuStats {
  std::size_t max_order = 0;  // min(4, longest candidate)
  std::array<std::size_t, kMaxBleuOrder> matches{};  // clipped n-gram matches
  std::array<std::size_t, kMaxBleuOrder> totals{};   // candidate n-grams
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;
  double brevity_penalty = 0.0;
  double score = 0.0;
};

// Corpus-level BLEU against one reference per candidate: clipped n-gram
// precisions for orders 1..N with uniform weights, where N is 4 or the
// longest candidate length if shorter, and the standard brevity penalty. No
// smoothing, so any order without a match gives 0. Throws
// Error(kEmptyInput) for no candidates and Error(kLengthMismatch) when the
// lists are not aligned.
BleuStats corpus_bleu_stats(std::span<const Tokens> candidates,
                            std::span<const Tokens> references);

double corpus_bleu(std::span<const Tokens> candidates, std::span<const Tokens> references);

}  // namespace increval
