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

#ifndef TRACELANG_OPSEM_HPP
#define TRACELANG_OPSEM_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "tracelang/lang.hpp"
#include "tracelang/prog.hpp"
#include "tracelang/trace.hpp"

namespace tracelang::opsem {

using lang::BoundedLang;
using prog::Command;
using prog::Prog;
using trace::Atom;
using trace::Description;
using trace::State;
using trace::StateSet;

// Abstract judgements over languages of any alphabet. All containments are
// decided at the shared bound.

template <typename A>
bool hoare_abstract(const BoundedLang<A>& p, const BoundedLang<A>& q, const BoundedLang<A>& r) {
  return lang::leq(lang::concat(p, q), r);
}

template <typename A>
bool is_member(const BoundedLang<A>& q, const std::vector<BoundedLang<A>>& actions) {
  for (const auto& a : actions)
    if (lang::eq(a, q)) return true;
  return false;
}

template <typename A>
bool milner_abstract(const BoundedLang<A>& p, const BoundedLang<A>& q, const BoundedLang<A>& r,
                     const std::vector<BoundedLang<A>>& actions) {
  return is_member(q, actions) && lang::leq(lang::concat(q, r), p);
}

template <typename A>
bool plotkin_abstract(const BoundedLang<A>& p, const BoundedLang<A>& s, const BoundedLang<A>& p2,
                      const BoundedLang<A>& s2, const std::vector<BoundedLang<A>>& actions) {
  for (const auto& q : actions)
    if (lang::leq(lang::concat(q, p2), p) && lang::leq(s2, lang::concat(s, q))) return true;
  return false;
}

template <typename A>
bool kahn_abstract(const BoundedLang<A>& p, const BoundedLang<A>& s, const BoundedLang<A>& s2) {
  return lang::leq(s2, lang::concat(s, p));
}

/// The set AtomicOperations; Actions is {skip} ∪ AtomicOperations.
struct OpSemConfig {
  std::vector<Atom> atomic_operations;

  std::vector<Description> actions(std::size_t bound) const;
};

/// Decided through the action that effects the step: ∃Q ∈ Actions with
/// P ⊇ Q;P′ and σ′ ∈ ⟦Q⟧(σ).
bool plotkin_desc(const Description& p, State s, const Description& p2, State s2, const OpSemConfig& cfg);
/// Endpoint form: [] ∈ P and σ = σ′, or a consistent u ∈ P runs from σ to σ′.
bool kahn_desc(const Description& p, State s, State s2);
StateSet sem(const Description& p, State s);
/// Relational: applies each atom sequence of C in turn, without building ⟨C⟩.
StateSet sem_cmd(const Command& c, State s);
StateSet sem_cmd_set(const Command& c, const StateSet& s);

// Literal definitions through T(σ), for the equivalence tests. They treat the
// word sets of P and P′ as the whole languages and work at bound
// |P| + prefix_bound so that no word of P is cut off.
bool kahn_desc_exists(const trace::StateSpace& space, const Description& p, State s, State s2,
                      std::size_t prefix_bound);
bool kahn_desc_forall(const trace::StateSpace& space, const Description& p, State s, State s2,
                      std::size_t prefix_bound);
bool plotkin_desc_exists(const trace::StateSpace& space, const Description& p, State s, const Description& p2,
                         State s2, const OpSemConfig& cfg, std::size_t prefix_bound);
bool plotkin_desc_forall(const trace::StateSpace& space, const Description& p, State s, const Description& p2,
                         State s2, const OpSemConfig& cfg, std::size_t prefix_bound);

/// nullopt is the skip action.
using Action = std::optional<Atom>;

Description action_description(const Action& q, std::size_t bound);
StateSet action_apply(const Action& q, State s);
std::string format_action(const Action& q);

struct MilnerStep {
  Action action;
  Prog residual;
};

/// One application of the command Milner rules, read off the syntax.
std::vector<MilnerStep> milner_steps(const Prog& p);

struct PlotkinStep {
  Prog residual;
  State next;
};

std::vector<PlotkinStep> plotkin_steps(const Prog& p, State s);

/// Unit laws (skip in ; and ||, one-branch choice) and right-nested ;.
Prog canonical(const Prog& p);

struct Configuration {
  Prog prog;
  State state;
  friend std::strong_ordering operator<=>(const Configuration&, const Configuration&) = default;
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct Transition {
  Configuration from;
  Action action;
  Configuration to;
};

struct PlotkinStarResult {
  /// In discovery order; the first entry is the start configuration.
  std::vector<Configuration> reached;
  std::vector<Transition> transitions;
  /// σ′ with ⟨p,σ⟩ →* ⟨skip,σ′⟩
  StateSet finals;
  /// The depth limit cut off unexplored configurations.
  bool truncated = false;

  /// Configurations from the start to `c` along discovery edges.
  std::vector<Configuration> path_to(const Configuration& c) const;

 private:
  friend PlotkinStarResult plotkin_star(const Prog&, State, std::size_t);
  std::map<Configuration, std::size_t> parent_;
  std::map<Configuration, std::size_t> index_;
};

/// Breadth-first closure of plotkin_steps for at most `depth` steps,
/// deduplicating canonical configurations.
PlotkinStarResult plotkin_star(const Prog& p, State s, std::size_t depth);

struct KahnOptions {
  std::size_t word_bound = 8;
  std::size_t unroll_bound = 16;
};

struct KahnResult {
  StateSet states;
  bool truncated = false;
};

/// Big-step evaluation. Star iterates to a state-set fixpoint; rec unrolls
/// syntactically up to unroll_bound nested calls; || goes through the shuffle
/// denotation at word_bound.
KahnResult kahn_eval(const Prog& p, State s, const KahnOptions& opts = {});
KahnResult kahn_eval_set(const Prog& p, const StateSet& s, const KahnOptions& opts = {});

}  // namespace tracelang::opsem

#endif  // TRACELANG_OPSEM_HPP
