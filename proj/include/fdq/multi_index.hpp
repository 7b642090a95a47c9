#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fdq/errors.hpp"

namespace fdq {

// Sparse multi-index over field modes: a sorted list of (mode, exponent)
// pairs with strictly increasing modes and strictly positive exponents.
// Modes are 1-based everywhere in this project.
class MultiIndex {
 public:
  using Entry = std::pair<unsigned, unsigned>;  // (mode, exponent)

  MultiIndex() = default;
  explicit MultiIndex(std::vector<Entry> entries) : e_(std::move(entries)) {
    std::sort(e_.begin(), e_.end());
    normalize();
  }

  static MultiIndex unit(unsigned mode, unsigned exp = 1) {
    MultiIndex m;
    if (exp > 0) m.e_.push_back({mode, exp});
    return m;
  }

  bool empty() const { return e_.empty(); }
  std::size_t support_size() const { return e_.size(); }

  unsigned get(unsigned mode) const {
    auto it = std::lower_bound(e_.begin(), e_.end(), Entry{mode, 0});
    return (it != e_.end() && it->first == mode) ? it->second : 0u;
  }

  unsigned total() const {
    unsigned t = 0;
    for (const auto& [m, x] : e_) t += x;
    return t;
  }

  unsigned max_mode() const { return e_.empty() ? 0u : e_.back().first; }

  // Componentwise sum.
  MultiIndex plus(const MultiIndex& o) const {
    MultiIndex r;
    r.e_.reserve(e_.size() + o.e_.size());
    std::size_t i = 0, j = 0;
    while (i < e_.size() || j < o.e_.size()) {
      if (j == o.e_.size() || (i < e_.size() && e_[i].first < o.e_[j].first)) {
        r.e_.push_back(e_[i++]);
      } else if (i == e_.size() || o.e_[j].first < e_[i].first) {
        r.e_.push_back(o.e_[j++]);
      } else {
        r.e_.push_back({e_[i].first, e_[i].second + o.e_[j].second});
        ++i, ++j;
      }
    }
    return r;
  }

  // Copy with one mode's exponent replaced (0 erases the entry).
  MultiIndex with(unsigned mode, unsigned exp) const {
    MultiIndex r = *this;
    auto it = std::lower_bound(r.e_.begin(), r.e_.end(), Entry{mode, 0});
    if (it != r.e_.end() && it->first == mode) {
      if (exp) it->second = exp;
      else r.e_.erase(it);
    } else if (exp) {
      r.e_.insert(it, {mode, exp});
    }
    return r;
  }

  // Componentwise dominance (this >= o everywhere).
  bool contains(const MultiIndex& o) const {
    for (const auto& [m, x] : o.e_)
      if (get(m) < x) return false;
    return true;
  }

  // Componentwise difference; requires contains(o).
  MultiIndex minus(const MultiIndex& o) const {
    MultiIndex r = *this;
    for (const auto& [m, x] : o.e_) {
      unsigned cur = r.get(m);
      if (cur < x) throw ValidationError("multi-index subtraction underflow");
      r = r.with(m, cur - x);
    }
    return r;
  }

  const std::vector<Entry>& entries() const { return e_; }

  // Dense exponent vector over modes 1..n.
  std::vector<unsigned> dense(unsigned n) const {
    std::vector<unsigned> v(n, 0);
    for (const auto& [m, x] : e_) {
      if (m == 0 || m > n) throw ValidationError("mode index out of range");
      v[m - 1] = x;
    }
    return v;
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }

  // Lexicographic compare on dense exponent vectors, done as a merged walk
  // over the sparse supports. Returns <0, 0, >0.
  friend int lex_cmp(const MultiIndex& a, const MultiIndex& b) {
    std::size_t i = 0, j = 0;
    while (i < a.e_.size() && j < b.e_.size()) {
      if (a.e_[i].first < b.e_[j].first) return 1;   // a has exponent where b has 0
      if (b.e_[j].first < a.e_[i].first) return -1;  // b has exponent where a has 0
      if (a.e_[i].second != b.e_[j].second) return a.e_[i].second > b.e_[j].second ? 1 : -1;
      ++i, ++j;
    }
    if (i < a.e_.size()) return 1;
    if (j < b.e_.size()) return -1;
    return 0;
  }

  std::string str(const std::string& var) const {
    std::string s;
    for (const auto& [m, x] : e_) {
      if (!s.empty()) s += "*";
      s += var + "[" + std::to_string(m) + "]";
      if (x > 1) s += "^" + std::to_string(x);
    }
    return s;
  }

 private:
  void normalize() {
    std::vector<Entry> out;
    for (const auto& [m, x] : e_) {
      if (x == 0) continue;
      if (!out.empty() && out.back().first == m) out.back().second += x;
      else out.push_back({m, x});
    }
    e_ = std::move(out);
  }

  std::vector<Entry> e_;
};

// Strict order for use as an associative-container key.
struct MultiIndexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const { return lex_cmp(a, b) < 0; }
};

namespace detail {
template <typename Fn>
void multi_index_rec(unsigned mode, unsigned modes, unsigned remaining,
                     std::vector<MultiIndex::Entry>& acc, Fn& fn) {
  if (mode == modes) {
    if (remaining) acc.push_back({mode, remaining});
    fn(MultiIndex(acc));
    if (remaining) acc.pop_back();
    return;
  }
  for (unsigned x = 0; x <= remaining; ++x) {
    if (x) acc.push_back({mode, x});
    multi_index_rec(mode + 1, modes, remaining - x, acc, fn);
    if (x) acc.pop_back();
  }
}

template <typename Fn>
void sub_index_rec(const std::vector<MultiIndex::Entry>& alpha, std::size_t pos,
                   std::vector<MultiIndex::Entry>& acc, Fn& fn) {
  if (pos == alpha.size()) {
    fn(MultiIndex(acc));
    return;
  }
  for (unsigned x = 0; x <= alpha[pos].second; ++x) {
    if (x) acc.push_back({alpha[pos].first, x});
    sub_index_rec(alpha, pos + 1, acc, fn);
    if (x) acc.pop_back();
  }
}
}  // namespace detail

// Visit every multi-index over modes 1..modes with the given total degree.
template <typename Fn>
void for_each_multi_index(unsigned modes, unsigned total, Fn&& fn) {
  if (modes == 0) throw ValidationError("mode space must have at least one mode");
  std::vector<MultiIndex::Entry> acc;
  detail::multi_index_rec(1, modes, total, acc, fn);
}

// Visit every gamma with gamma <= alpha componentwise.
template <typename Fn>
void for_each_sub_index(const MultiIndex& alpha, Fn&& fn) {
  std::vector<MultiIndex::Entry> acc;
  detail::sub_index_rec(alpha.entries(), 0, acc, fn);
}

}  // namespace fdq
