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

#ifndef TRACELANG_SRC_LAWS_COMMON_HPP
#define TRACELANG_SRC_LAWS_COMMON_HPP

#include <chrono>
#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tracelang/lang.hpp"
#include "tracelang/laws.hpp"
#include "tracelang/prog.hpp"
#include "tracelang/trace.hpp"

namespace tracelang::laws::detail {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }
inline bool coin(Rng& rng, unsigned percent = 50) { return rng() % 100 < percent; }

/// One instance: counts it, and a violation when the premise held but the
/// conclusion did not. `why` is only evaluated for the first violation.
inline void record(LawResult& r, bool premise, bool conclusion, const std::function<std::string()>& why) {
  ++r.instances;
  if (!premise) return;
  ++r.premise_held;
  if (!conclusion) {
    ++r.violations;
    if (r.counterexample.empty()) r.counterexample = why();
  }
}

/// Runs `one` until `target` instances had their premise hold, giving up
/// after 4 × target attempts.
template <typename F>
LawResult repeat(const std::string& suite, const std::string& law, std::size_t target, F&& one) {
  LawResult r;
  r.suite = suite;
  r.law = law;
  while (r.premise_held < target && r.instances < 4 * target) one(r);
  return r;
}

/// A refutation: `one` returns a witness description or "".
template <typename F>
LawResult refute(const std::string& suite, const std::string& law, std::size_t attempts, F&& one) {
  LawResult r;
  r.suite = suite;
  r.law = law;
  r.refutation = true;
  for (std::size_t i = 0; i < attempts && r.counterexample.empty(); ++i) {
    ++r.instances;
    r.counterexample = one();
  }
  return r;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Random generators shared by the suites.

template <typename A>
lang::BoundedLang<A> random_lang(Rng& rng, const std::vector<A>& alphabet, std::size_t n, std::size_t max_words = 5) {
  lang::BoundedLang<A> out(n);
  const std::size_t count = pick(rng, max_words + 1);
  for (std::size_t i = 0; i < count; ++i) {
    lang::Word<A> w;
    const std::size_t len = pick(rng, n + 1);
    for (std::size_t j = 0; j < len; ++j) w.push_back(alphabet[pick(rng, alphabet.size())]);
    out.insert(std::move(w));
  }
  return out;
}

/// Each word kept with probability `percent`.
template <typename A>
lang::BoundedLang<A> random_subset(Rng& rng, const lang::BoundedLang<A>& p, unsigned percent = 50) {
  lang::BoundedLang<A> out(p.bound());
  for (const auto& w : p)
    if (coin(rng, percent)) out.insert(w);
  return out;
}

/// Up to `max_len` steps, mostly consistent, sometimes a jump.
trace::Description random_desc(Rng& rng, const trace::StateSpace& sp, std::size_t n, std::size_t max_len,
                               std::size_t count);
prog::Command random_command(Rng& rng, const std::vector<trace::Atom>& atoms, std::size_t n,
                             std::size_t max_words = 4, std::size_t max_len = 0);
/// A closed program over the atoms with seq, choice, par and (rarely) star.
prog::Prog random_prog(Rng& rng, const std::vector<trace::Atom>& atoms, std::size_t depth);

/// A small state space with a handful of atoms over it.
struct Space {
  std::string name;
  trace::StateSpace space;
  std::vector<trace::Atom> atoms;
};

/// x:0..2; x,y:0..1; x,y:0..2.
std::vector<Space> battery_spaces();

inline std::string char_lang(const lang::BoundedLang<char>& p) {
  return lang::format_lang(p, [](char c) { return std::string(1, c); });
}

}  // namespace tracelang::laws::detail

#endif  // TRACELANG_SRC_LAWS_COMMON_HPP
