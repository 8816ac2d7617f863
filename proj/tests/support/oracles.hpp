#pragma once

// Brute-force reference computations used only by tests. They work from the
// metric definitions over the stored trace and share no code with the
// library's metric paths (no apply_delay, no edit scripts, no streaming).

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "increval/types.hpp"

namespace increval::oracle {

using Fraction = std::pair<std::int64_t, std::int64_t>;

inline Ratio to_ratio(const Fraction& f) { return Ratio(f.first, f.second); }

// Label visible for token `i` (1-based) at step `t` under delay `d`, if any.
inline const std::string* visible(const IncrementalTrace& tr, std::size_t t, std::size_t i,
                                  std::size_t d) {
  const std::size_t n = tr.tokens.size();
  const bool tagging = tr.task == TaskKind::kTagging;
  const std::size_t first_seen = tagging ? i + d : 1 + d;
  if (t != n && t < first_seen) return nullptr;
  if (tagging && i > t) return nullptr;
  return &tr.steps[t - 1][tagging ? i - 1 : 0];
}

inline std::size_t slots(const IncrementalTrace& tr) {
  return tr.task == TaskKind::kTagging ? tr.tokens.size() : 1;
}

inline std::size_t substitutions(const IncrementalTrace& tr, std::size_t d) {
  std::size_t subs = 0;
  for (std::size_t i = 1; i <= slots(tr); ++i) {
    const std::string* last = nullptr;
    for (std::size_t t = 1; t <= tr.tokens.size(); ++t) {
      const std::string* now = visible(tr, t, i, d);
      if (now == nullptr) continue;
      if (last != nullptr && *last != *now) ++subs;
      last = now;
    }
  }
  return subs;
}

inline Fraction edit_overhead(const IncrementalTrace& tr, std::size_t d) {
  const auto u = static_cast<std::int64_t>(substitutions(tr, d));
  return {u, static_cast<std::int64_t>(slots(tr)) + u};
}

inline Fraction relative_correctness(const IncrementalTrace& tr, std::size_t d) {
  const std::size_t n = tr.tokens.size();
  std::int64_t good = 0;
  for (std::size_t t = 1; t <= n; ++t) {
    bool ok = true;
    for (std::size_t i = 1; i <= slots(tr); ++i) {
      const std::string* now = visible(tr, t, i, d);
      if (now != nullptr && *now != *visible(tr, n, i, d)) ok = false;
    }
    good += ok ? 1 : 0;
  }
  return {good, static_cast<std::int64_t>(n)};
}

// Earliest step s >= first appearance with every later label equal to the
// final one, checked exhaustively.
inline std::size_t final_decision(const IncrementalTrace& tr, std::size_t i) {
  const std::size_t n = tr.tokens.size();
  const std::size_t first = tr.task == TaskKind::kTagging ? i : 1;
  for (std::size_t s = first; s <= n; ++s) {
    bool stable = true;
    for (std::size_t later = s; later <= n; ++later) {
      if (*visible(tr, later, i, 0) != *visible(tr, n, i, 0)) stable = false;
    }
    if (stable) return s;
  }
  return n;
}

inline Fraction correction_time(const IncrementalTrace& tr) {
  const auto n = static_cast<std::int64_t>(tr.tokens.size());
  if (n == 1) return {0, 1};
  if (tr.task == TaskKind::kClassification) {
    return {static_cast<std::int64_t>(final_decision(tr, 1)) - 1, n - 1};
  }
  std::int64_t num = 0;
  std::int64_t den = 0;
  for (std::int64_t i = 1; i <= n; ++i) {
    num += static_cast<std::int64_t>(final_decision(tr, static_cast<std::size_t>(i))) - i;
    den += n - i;
  }
  return {num, den};
}

// Cumulative undelayed EO after each step.
inline std::vector<Fraction> partial_edit_overhead(const IncrementalTrace& tr) {
  std::vector<Fraction> out;
  std::int64_t subs = 0;
  std::int64_t adds = 0;
  for (std::size_t t = 1; t <= tr.tokens.size(); ++t) {
    for (std::size_t i = 1; i <= slots(tr); ++i) {
      const std::string* now = visible(tr, t, i, 0);
      if (now == nullptr) continue;
      const std::string* before = t > 1 ? visible(tr, t - 1, i, 0) : nullptr;
      if (before == nullptr) {
        ++adds;
      } else if (*before != *now) {
        ++subs;
      }
    }
    out.push_back(subs + adds == 0 ? Fraction{0, 1} : Fraction{subs, subs + adds});
  }
  return out;
}

// Every (begin, end, type) that is a maximal B-x (I-x)* run, by enumerating
// all candidate intervals.
inline std::vector<std::tuple<std::size_t, std::size_t, std::string>> spans(
    const std::vector<std::string>& labels) {
  std::vector<std::tuple<std::size_t, std::size_t, std::string>> out;
  const std::size_t n = labels.size();
  for (std::size_t b = 0; b < n; ++b) {
    if (labels[b].rfind("B-", 0) != 0 || labels[b].size() < 3) continue;
    const std::string type = labels[b].substr(2);
    for (std::size_t e = b; e < n; ++e) {
      bool inner = true;
      for (std::size_t k = b + 1; k <= e; ++k) inner = inner && labels[k] == "I-" + type;
      const bool maximal = e + 1 == n || labels[e + 1] != "I-" + type;
      if (inner && maximal) out.emplace_back(b + 1, e + 1, type);
    }
  }
  return out;
}

// Harmonic mean written as 2m / (p + g).
inline double f1(std::size_t matched, std::size_t predicted, std::size_t gold) {
  if (matched == 0) return 0.0;
  return 2.0 * static_cast<double>(matched) / static_cast<double>(predicted + gold);
}

}  // namespace increval::oracle
