#include "increval/ngram.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "increval/error.hpp"
#include "text.hpp"

namespace increval {
namespace {

constexpr std::string_view kMagic = "increval-ngram 1";

template <typename T>
bool parse_uint(const std::string& text, T& value) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

NGramModel NGramModel::train(std::span<const Tokens> corpus, std::size_t order) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyInput, "n-gram training corpus is empty");
  if (order < 2) {
    throw Error(ErrorCode::kInvalidArgument, "n-gram order must be at least 2");
  }
  NGramModel model;
  model.order_ = order;
  for (const Tokens& sentence : corpus) {
    Tokens padded(order - 1, std::string(kStart));
    padded.insert(padded.end(), sentence.begin(), sentence.end());
    padded.emplace_back(kEnd);
    for (std::size_t p = order - 1; p < padded.size(); ++p) {
      for (std::size_t m = 1; m < order; ++m) {
        Tokens context(padded.begin() + static_cast<std::ptrdiff_t>(p - m),
                       padded.begin() + static_cast<std::ptrdiff_t>(p));
        ++model.successors_[std::move(context)][padded[p]];
      }
    }
  }
  return model;
}

std::uint64_t NGramModel::count(const Tokens& context, std::string_view next) const {
  const auto it = successors_.find(context);
  if (it == successors_.end()) return 0;
  const auto hit = it->second.find(next);
  return hit == it->second.end() ? 0 : hit->second;
}

Tokens NGramModel::continue_greedy(std::span<const std::string> prefix,
                                   std::size_t max_length) const {
  Tokens history(order_ - 1, std::string(kStart));
  history.insert(history.end(), prefix.begin(), prefix.end());
  Tokens out;
  while (out.size() < max_length) {
    const Successors* successors = nullptr;
    for (std::size_t m = order_ - 1; m >= 1 && successors == nullptr; --m) {
      const Tokens context(history.end() - static_cast<std::ptrdiff_t>(m), history.end());
      if (const auto it = successors_.find(context); it != successors_.end()) {
        successors = &it->second;
      }
    }
    if (successors == nullptr) break;

    // Map iteration is lexicographic, so keeping the first maximum breaks
    // ties towards the smallest token.
    const std::string* best = nullptr;
    std::uint64_t best_count = 0;
    for (const auto& [token, n] : *successors) {
      if (n > best_count) {
        best = &token;
        best_count = n;
      }
    }
    if (best == nullptr || *best == kEnd) break;
    out.push_back(*best);
    history.push_back(*best);
  }
  return out;
}

void NGramModel::save(std::ostream& out) const {
  out << kMagic << '\n' << "order\t" << order_ << '\n';
  for (const auto& [context, successors] : successors_) {
    for (const auto& [next, n] : successors) {
      out << context.size();
      for (const auto& token : context) out << '\t' << token;
      out << '\t' << next << '\t' << n << '\n';
    }
  }
}

NGramModel NGramModel::load(std::istream& in) {
  auto fail = [](std::size_t line, const std::string& what) {
    return Error(ErrorCode::kParseError, what, ErrorContext{std::nullopt, line, {}, {}});
  };
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kMagic) throw fail(line_no, "not an increval n-gram model");

  NGramModel model;
  ++line_no;
  if (!std::getline(in, line)) throw fail(line_no, "missing order line");
  {
    const auto fields = text::split_tabs(line);
    if (fields.size() != 2 || fields[0] != "order" || !parse_uint(fields[1], model.order_) ||
        model.order_ < 2) {
      throw fail(line_no, "invalid order line");
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = text::split_tabs(line);
    std::size_t m = 0;
    if (fields.empty() || !parse_uint(fields[0], m) || m == 0 || m >= model.order_ ||
        fields.size() != m + 3) {
      throw fail(line_no, "malformed n-gram entry");
    }
    std::uint64_t n = 0;
    if (!parse_uint(fields.back(), n) || n == 0) throw fail(line_no, "invalid count");
    Tokens context(fields.begin() + 1, fields.begin() + 1 + static_cast<std::ptrdiff_t>(m));
    model.successors_[std::move(context)][fields[m + 1]] = n;
  }
  return model;
}

void NGramModel::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  save(out);
}

NGramModel NGramModel::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  return load(in);
}

}  // namespace increval
