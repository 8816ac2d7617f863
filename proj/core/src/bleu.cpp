#include "increval/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "increval/error.hpp"

namespace increval {
namespace {

using NGramCounts = std::map<std::span<const std::string>, std::size_t,
                             decltype([](std::span<const std::string> a,
                                         std::span<const std::string> b) {
                               return std::lexicographical_compare(a.begin(), a.end(),
                                                                   b.begin(), b.end());
                             })>;

NGramCounts count_ngrams(const Tokens& tokens, std::size_t order) {
  NGramCounts counts;
  if (tokens.size() < order) return counts;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    ++counts[std::span<const std::string>(tokens.data() + i, order)];
  }
  return counts;
}

}  // namespace

BleuStats corpus_bleu_stats(std::span<const Tokens> candidates,
                            std::span<const Tokens> references) {
  if (candidates.empty()) throw Error(ErrorCode::kEmptyInput, "no candidates to score");
  if (candidates.size() != references.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(candidates.size()) + " candidates vs " +
                    std::to_string(references.size()) + " references");
  }
  BleuStats stats;
  for (const Tokens& c : candidates) stats.max_order = std::max(stats.max_order, c.size());
  stats.max_order = std::min(stats.max_order, kMaxBleuOrder);

  for (std::size_t k = 0; k < candidates.size(); ++k) {
    stats.candidate_length += candidates[k].size();
    stats.reference_length += references[k].size();
    for (std::size_t order = 1; order <= stats.max_order; ++order) {
      const NGramCounts cand = count_ngrams(candidates[k], order);
      const NGramCounts ref = count_ngrams(references[k], order);
      for (const auto& [gram, n] : cand) {
        stats.totals[order - 1] += n;
        if (const auto it = ref.find(gram); it != ref.end()) {
          stats.matches[order - 1] += std::min(n, it->second);
        }
      }
    }
  }

  if (stats.candidate_length == 0) return stats;
  const double c = static_cast<double>(stats.candidate_length);
  const double r = static_cast<double>(stats.reference_length);
  stats.brevity_penalty = c >= r ? 1.0 : std::exp(1.0 - r / c);

  double log_precision = 0.0;
  for (std::size_t order = 1; order <= stats.max_order; ++order) {
    if (stats.matches[order - 1] == 0) return stats;
    log_precision += std::log(static_cast<double>(stats.matches[order - 1]) /
                              static_cast<double>(stats.totals[order - 1]));
  }
  stats.score = stats.brevity_penalty *
                std::exp(log_precision / static_cast<double>(stats.max_order));
  return stats;
}

double corpus_bleu(std::span<const Tokens> candidates, std::span<const Tokens> references) {
  return corpus_bleu_stats(candidates, references).score;
}

}  // namespace increval
