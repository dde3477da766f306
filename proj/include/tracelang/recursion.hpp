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

#ifndef TRACELANG_RECURSION_HPP
#define TRACELANG_RECURSION_HPP

// Recursion rules checked as implications on concrete instances.
//
// The deductive rules have the shape "(∀Q. J(Q) ⇒ J(f(Q))) ⇒ J(lfp f)". Their
// premise is tested on a sampled family of Q (the Kleene iterates of f plus
// random languages); the conclusion is then evaluated on the bounded least
// fixpoint. The operational rules relate steps and outcomes of lfp f to those
// of f(lfp f).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tracelang/fixpoint.hpp"
#include "tracelang/lang.hpp"
#include "tracelang/prog.hpp"
#include "tracelang/views.hpp"

namespace tracelang::recursion {

using prog::Command;
using prog::Prog;
using views::View;
using views::ViewStructure;

struct RuleCheck {
  std::string rule;
  std::size_t instances = 0;
  /// Instances whose premise held.
  std::size_t premise_held = 0;
  std::size_t violations = 0;
  std::string counterexample;
  bool ok() const { return violations == 0; }
};

/// Kleene iterates ⊥, f(⊥), ... up to convergence or `max_rounds`, followed by
/// `extra` random languages drawn from `pool`.
template <typename A>
std::vector<lang::BoundedLang<A>> sample_family(const fixpoint::MonotoneFn<A>& f, std::size_t bound,
                                                std::size_t max_rounds, const std::vector<lang::Word<A>>& pool,
                                                std::size_t extra, std::uint64_t seed) {
  std::vector<lang::BoundedLang<A>> out;
  auto x = lang::empty<A>(bound);
  for (std::size_t i = 0; i < max_rounds; ++i) {
    out.push_back(x);
    auto next = f(x);
    if (lang::eq(next, x)) break;
    x = std::move(next);
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < extra && !pool.empty(); ++i) {
    lang::BoundedLang<A> q(bound);
    const std::size_t n = rng() % 9;
    for (std::size_t j = 0; j < n; ++j) q.insert(pool[rng() % pool.size()]);
    // Half of the samples extend an iterate.
    if (rng() % 2 && !out.empty()) q = lang::unite(q, out[rng() % out.size()]);
    out.push_back(q);
  }
  return out;
}

/// "(∀Q. J(Q) ⇒ J(f(Q))) ⇒ J(lfp f)" on the sampled family.
template <typename A>
RuleCheck check_rec_rule(std::string name, const fixpoint::MonotoneFn<A>& f,
                         const std::vector<lang::BoundedLang<A>>& family, const lang::BoundedLang<A>& lfp,
                         const std::function<bool(const lang::BoundedLang<A>&)>& judgement) {
  RuleCheck r{std::move(name), 0, 0, 0, {}};
  bool premise = true;
  for (const auto& q : family) {
    ++r.instances;
    if (judgement(q) && !judgement(f(q))) {
      premise = false;
      break;
    }
  }
  if (premise) {
    r.premise_held = 1;
    if (!judgement(lfp)) {
      r.violations = 1;
      r.counterexample = "premise holds on every sample but the judgement fails on lfp f";
    }
  }
  return r;
}

struct RecursionOptions {
  std::size_t word_bound = 6;
  std::size_t max_rounds = 64;
  std::size_t samples = 40;
  std::uint64_t seed = 1;
  std::size_t depth = 64;
};

/// All nine rules on a closed `rec X. body`: Hrec with Hoare pre/post
/// languages `hp`/`hr`, Brec/Frec/Vrec with views v/v2, and the operational
/// PCrec, PCrec′, MCrec, MCrec′, KCrec.
std::vector<RuleCheck> check_recursion_rules(const ViewStructure& vs, const Prog& rec, const View& v, const View& v2,
                                             const Command& hp, const Command& hr, const RecursionOptions& opts = {});

/// f as a function on commands: λX. body.
fixpoint::MonotoneFn<trace::Atom> rec_function(const Prog& rec, std::size_t word_bound);

}  // namespace tracelang::recursion

#endif  // TRACELANG_RECURSION_HPP
