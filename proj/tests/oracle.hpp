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

#ifndef TRACELANG_TESTS_ORACLE_HPP
#define TRACELANG_TESTS_ORACLE_HPP

// Brute-force reference implementations for the unit tests. They share no
// code with the library: languages are plain std::set<std::vector<char>>,
// and every operator is decided by definition over the full word space.

#include <cstddef>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using W = std::vector<char>;
using L = std::set<W>;

inline std::vector<W> all_words(const std::vector<char>& alphabet, std::size_t bound) {
  std::vector<W> out{W{}};
  std::size_t start = 0;
  for (std::size_t len = 1; len <= bound; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = start; i < end; ++i)
      for (char a : alphabet) {
        W w = out[i];
        w.push_back(a);
        out.push_back(w);
      }
    start = end;
  }
  return out;
}

// w ∈ P;Q iff some split point puts the halves in P and Q.
inline bool in_concat(const W& w, const L& p, const L& q) {
  for (std::size_t k = 0; k <= w.size(); ++k)
    if (p.count(W(w.begin(), w.begin() + k)) && q.count(W(w.begin() + k, w.end()))) return true;
  return false;
}

// w ∈ P* iff w splits into factors from P (DP over prefixes).
inline bool in_star(const W& w, const L& p) {
  std::vector<bool> ok(w.size() + 1, false);
  ok[0] = true;
  for (std::size_t j = 1; j <= w.size(); ++j)
    for (std::size_t i = 0; i < j && !ok[j]; ++i)
      if (ok[i] && p.count(W(w.begin() + i, w.begin() + j))) ok[j] = true;
  return ok[w.size()];
}

// w ∈ p ⧢ q iff some choice of |p| positions of w spells p and the rest q.
inline bool is_interleaving(const W& w, const W& p, const W& q) {
  const std::size_t n = w.size();
  if (n != p.size() + q.size() || n > 20) return false;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != p.size()) continue;
    W a, b;
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? a : b).push_back(w[i]);
    if (a == p && b == q) return true;
  }
  return false;
}

inline bool in_shuffle(const W& w, const L& p, const L& q) {
  for (const auto& x : p)
    for (const auto& y : q)
      if (is_interleaving(w, x, y)) return true;
  return false;
}

inline L filter(const std::vector<char>& alphabet, std::size_t bound, auto pred) {
  L out;
  for (const auto& w : all_words(alphabet, bound))
    if (pred(w)) out.insert(w);
  return out;
}

inline L random_lang(std::mt19937& rng, const std::vector<char>& alphabet, std::size_t bound, double density) {
  std::bernoulli_distribution coin(density);
  L out;
  for (const auto& w : all_words(alphabet, bound))
    if (coin(rng)) out.insert(w);
  return out;
}

}  // namespace oracle

#endif  // TRACELANG_TESTS_ORACLE_HPP
