#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "increval/types.hpp"

namespace increval {

// Count-based n-gram model used as a deterministic prophecy source.
//
// Training pads every sentence with order-1 start symbols and one end
// symbol, and records successor counts for every context length from 1 to
// order-1, so decoding can back off to shorter contexts.
class NGramModel {
 public:
  static constexpr std::string_view kStart = "<s>";
  static constexpr std::string_view kEnd = "</s>";

  // Throws Error(kEmptyInput) for an empty corpus and Error(kInvalidArgument)
  // for order < 2.
  static NGramModel train(std::span<const Tokens> corpus, std::size_t order);

  std::size_t order() const noexcept { return order_; }

  // Times `next` followed `context` (1 <= |context| < order) in training.
  std::uint64_t count(const Tokens& context, std::string_view next) const;

  // Greedy continuation of a sentence prefix: take the most frequent
  // successor of the longest seen context (ties to the lexicographically
  // smallest token) until the end symbol, an unseen context, or
  // `max_length` tokens. The end symbol is never returned.
  Tokens continue_greedy(std::span<const std::string> prefix, std::size_t max_length) const;

  void save(std::ostream& out) const;
  // Throws Error(kParseError) with the offending line number.
  static NGramModel load(std::istream& in);

  void save_file(const std::string& path) const;
  static NGramModel load_file(const std::string& path);

  friend bool operator==(const NGramModel&, const NGramModel&) = default;

 private:
  using Successors = std::map<std::string, std::uint64_t, std::less<>>;

  std::size_t order_ = 2;
  std::map<Tokens, Successors> successors_;
};

}  // namespace increval
