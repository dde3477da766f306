/*
 * Copyright (c) 2026, The tracelang Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TRACELANG_LANG_HPP
#define TRACELANG_LANG_HPP

// Finite-word languages under a "complete up to length N" contract.
//
// A BoundedLang<A> with bound N stands for a possibly infinite language L:
// its word set is exactly { w in L : |w| <= N }. Every operator below takes
// operands at the same bound and returns the truncation of the true result,
// so equalities and inclusions between composite expressions can be decided
// exactly at the bound.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tracelang/error.hpp"

namespace tracelang::lang {

template <typename A>
using Word = std::vector<A>;

template <typename A>
class BoundedLang {
 public:
  using letter_type = A;
  using word_type = Word<A>;
  using set_type = std::set<Word<A>>;
  using const_iterator = typename set_type::const_iterator;

  explicit BoundedLang(std::size_t bound) : bound_(bound) {}

  /// Throws Error if a word is longer than the bound.
  BoundedLang(std::size_t bound, std::initializer_list<Word<A>> words) : bound_(bound) {
    for (const auto& w : words) insert(w);
  }

  template <typename Range>
  static BoundedLang from_words(std::size_t bound, const Range& words) {
    BoundedLang out(bound);
    for (const auto& w : words) out.insert(Word<A>(std::begin(w), std::end(w)));
    return out;
  }

  std::size_t bound() const { return bound_; }
  const set_type& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  bool is_empty() const { return words_.empty(); }
  bool contains(const Word<A>& w) const { return words_.count(w) != 0; }
  const_iterator begin() const { return words_.begin(); }
  const_iterator end() const { return words_.end(); }

  std::size_t max_length() const {
    std::size_t m = 0;
    for (const auto& w : words_) m = std::max(m, w.size());
    return m;
  }

  /// Restriction to words of length <= m, re-bounded at m (m <= bound).
  BoundedLang truncate(std::size_t m) const {
    if (m > bound_) throw Error("truncate: target bound exceeds current bound");
    BoundedLang out(m);
    for (const auto& w : words_)
      if (w.size() <= m) out.words_.insert(out.words_.end(), w);
    return out;
  }

  /// Reinterprets the word set at a larger bound. Only meaningful when the
  /// word set is the whole language (a finite language with no words beyond
  /// the current bound); callers make that claim explicitly.
  BoundedLang with_bound(std::size_t m) const {
    if (m < bound_) throw Error("with_bound: use truncate to shrink a bound");
    BoundedLang out(m);
    out.words_ = words_;
    return out;
  }

  void insert(Word<A> w) {
    if (w.size() > bound_) throw Error("word longer than language bound");
    words_.insert(std::move(w));
  }

  bool operator==(const BoundedLang& other) const = default;

 private:
  std::size_t bound_;
  set_type words_;
};

namespace detail {

inline void require_same_bound(std::size_t a, std::size_t b) {
  if (a != b) throw BoundMismatch(a, b);
}

}  // namespace detail

template <typename A>
BoundedLang<A> empty(std::size_t bound) {
  return BoundedLang<A>(bound);
}

template <typename A>
BoundedLang<A> skip(std::size_t bound) {
  BoundedLang<A> out(bound);
  out.insert({});
  return out;
}

template <typename A>
BoundedLang<A> singleton(std::size_t bound, Word<A> w) {
  BoundedLang<A> out(bound);
  out.insert(std::move(w));
  return out;
}

/// All words over `alphabet` up to the bound.
template <typename A>
BoundedLang<A> top(const std::vector<A>& alphabet, std::size_t bound) {
  if (alphabet.empty()) throw Error("top: alphabet must be non-empty");
  std::set<A> letters(alphabet.begin(), alphabet.end());
  BoundedLang<A> out(bound);
  std::vector<Word<A>> layer{Word<A>{}};
  out.insert({});
  for (std::size_t len = 1; len <= bound; ++len) {
    std::vector<Word<A>> next;
    next.reserve(layer.size() * letters.size());
    for (const auto& w : layer) {
      for (const auto& a : letters) {
        auto x = w;
        x.push_back(a);
        out.insert(x);
        next.push_back(std::move(x));
      }
    }
    layer = std::move(next);
  }
  return out;
}

template <typename A>
BoundedLang<A> unite(const BoundedLang<A>& p, const BoundedLang<A>& q) {
  detail::require_same_bound(p.bound(), q.bound());
  auto out = p;
  for (const auto& w : q) out.insert(w);
  return out;
}

template <typename A>
BoundedLang<A> intersect(const BoundedLang<A>& p, const BoundedLang<A>& q) {
  detail::require_same_bound(p.bound(), q.bound());
  BoundedLang<A> out(p.bound());
  for (const auto& w : p)
    if (q.contains(w)) out.insert(w);
  return out;
}

/// Union of a family; the bound is explicit so the empty family is ⊥.
template <typename A>
BoundedLang<A> big_union(const std::vector<BoundedLang<A>>& family, std::size_t bound) {
  BoundedLang<A> out(bound);
  for (const auto& p : family) {
    detail::require_same_bound(bound, p.bound());
    for (const auto& w : p) out.insert(w);
  }
  return out;
}

/// Intersection of a non-empty family.
template <typename A>
BoundedLang<A> big_intersect(const std::vector<BoundedLang<A>>& family) {
  if (family.empty()) throw Error("big_intersect of an empty family needs an alphabet (⊤)");
  auto out = family.front();
  for (std::size_t i = 1; i < family.size(); ++i) out = intersect(out, family[i]);
  return out;
}

template <typename A>
BoundedLang<A> concat(const BoundedLang<A>& p, const BoundedLang<A>& q) {
  detail::require_same_bound(p.bound(), q.bound());
  const std::size_t n = p.bound();
  BoundedLang<A> out(n);
  for (const auto& x : p) {
    for (const auto& y : q) {
      if (x.size() + y.size() > n) continue;
      Word<A> w;
      w.reserve(x.size() + y.size());
      w.insert(w.end(), x.begin(), x.end());
      w.insert(w.end(), y.begin(), y.end());
      out.insert(std::move(w));
    }
  }
  return out;
}

namespace detail {

// Three-clause recursive definition: [] and p interleave to {p}, p and []
// to {p}, and (e:p),(e':q) to e:(p ⧢ e':q) ∪ e':(e:p ⧢ q).
template <typename A>
void interleave_into(const Word<A>& p, std::size_t i, const Word<A>& q, std::size_t j,
                     Word<A>& prefix, std::set<Word<A>>& out) {
  if (i == p.size()) {
    Word<A> w = prefix;
    w.insert(w.end(), q.begin() + static_cast<std::ptrdiff_t>(j), q.end());
    out.insert(std::move(w));
    return;
  }
  if (j == q.size()) {
    Word<A> w = prefix;
    w.insert(w.end(), p.begin() + static_cast<std::ptrdiff_t>(i), p.end());
    out.insert(std::move(w));
    return;
  }
  prefix.push_back(p[i]);
  interleave_into(p, i + 1, q, j, prefix, out);
  prefix.back() = q[j];
  interleave_into(p, i, q, j + 1, prefix, out);
  prefix.pop_back();
}

}  // namespace detail

template <typename A>
std::set<Word<A>> interleave_words(const Word<A>& p, const Word<A>& q) {
  std::set<Word<A>> out;
  Word<A> prefix;
  prefix.reserve(p.size() + q.size());
  detail::interleave_into(p, 0, q, 0, prefix, out);
  return out;
}

template <typename A>
BoundedLang<A> shuffle(const BoundedLang<A>& p, const BoundedLang<A>& q) {
  detail::require_same_bound(p.bound(), q.bound());
  const std::size_t n = p.bound();
  BoundedLang<A> out(n);
  for (const auto& x : p) {
    for (const auto& y : q) {
      if (x.size() + y.size() > n) continue;
      if (x.empty()) {
        out.insert(y);
      } else if (y.empty()) {
        out.insert(x);
      } else {
        for (auto& w : interleave_words(x, y)) out.insert(std::move(w));
      }
    }
  }
  return out;
}

template <typename A>
BoundedLang<A> power(const BoundedLang<A>& p, std::size_t n) {
  auto out = skip<A>(p.bound());
  for (std::size_t k = 0; k < n; ++k) out = concat(p, out);
  return out;
}

template <typename A>
BoundedLang<A> star(const BoundedLang<A>& p) {
  const std::size_t n = p.bound();
  // [] adds nothing after round 0; dropping it makes every round strictly
  // lengthen the words it produces.
  BoundedLang<A> step(n);
  for (const auto& w : p)
    if (!w.empty()) step.insert(w);

  auto acc = skip<A>(n);
  BoundedLang<A> frontier = acc;
  while (!frontier.is_empty()) {
    BoundedLang<A> next(n);
    for (const auto& w : concat(step, frontier))
      if (!acc.contains(w)) next.insert(w);
    for (const auto& w : next) acc.insert(w);
    frontier = std::move(next);
  }
  return acc;
}

template <typename A>
bool leq(const BoundedLang<A>& p, const BoundedLang<A>& q) {
  detail::require_same_bound(p.bound(), q.bound());
  return std::includes(q.begin(), q.end(), p.begin(), p.end());
}

template <typename A>
bool eq(const BoundedLang<A>& p, const BoundedLang<A>& q) {
  detail::require_same_bound(p.bound(), q.bound());
  return p.words() == q.words();
}

template <typename A, typename Fmt>
std::string format_word(const Word<A>& w, Fmt&& fmt_letter, const char* sep = "") {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << sep;
    os << fmt_letter(w[i]);
  }
  os << ']';
  return os.str();
}

template <typename A, typename Fmt>
std::string format_lang(const BoundedLang<A>& p, Fmt&& fmt_letter, const char* sep = "") {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& w : p) {
    if (!first) os << ", ";
    first = false;
    os << format_word(w, fmt_letter, sep);
  }
  os << '}';
  return os.str();
}

}  // namespace tracelang::lang

#endif  // TRACELANG_LANG_HPP
