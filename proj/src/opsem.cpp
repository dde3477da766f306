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

#include "tracelang/opsem.hpp"

#include <algorithm>
#include <deque>

#include "tracelang/error.hpp"

namespace tracelang::opsem {

std::vector<Description> OpSemConfig::actions(std::size_t bound) const {
  std::vector<Description> out{lang::skip<trace::Step>(bound)};
  for (const auto& a : atomic_operations) out.push_back(trace::atom_description(a, bound));
  return out;
}

bool plotkin_desc(const Description& p, State s, const Description& p2, State s2, const OpSemConfig& cfg) {
  lang::detail::require_same_bound(p.bound(), p2.bound());
  if (s == s2 && lang::leq(p2, p)) return true;
  for (const auto& a : cfg.atomic_operations) {
    const auto& img = a.image(s);
    if (!std::binary_search(img.begin(), img.end(), s2)) continue;
    if (lang::leq(lang::concat(trace::atom_description(a, p.bound()), p2), p)) return true;
  }
  return false;
}

bool kahn_desc(const Description& p, State s, State s2) {
  for (const auto& u : p) {
    if (u.empty()) {
      if (s == s2) return true;
      continue;
    }
    if (u.front().from == s && u.back().to == s2 && trace::is_consistent(u)) return true;
  }
  return false;
}

StateSet sem(const Description& p, State s) {
  StateSet out;
  for (const auto& u : p) {
    if (u.empty()) {
      out.insert(s);
    } else if (u.front().from == s && trace::is_consistent(u)) {
      out.insert(u.back().to);
    }
  }
  return out;
}

StateSet sem_cmd_set(const Command& c, const StateSet& s) {
  // Words arrive in lexicographic order, so consecutive words share prefixes;
  // stack[i] holds the states reached after the first i atoms of the
  // previous word.
  StateSet out;
  std::vector<StateSet> stack{s};
  const prog::AtomSeq* prev = nullptr;
  for (const auto& as : c) {
    std::size_t common = 0;
    if (prev) {
      while (common < as.size() && common < prev->size() && as[common] == (*prev)[common]) ++common;
    }
    stack.resize(common + 1);
    for (std::size_t i = common; i < as.size(); ++i) stack.push_back(trace::atom_apply_set(as[i], stack.back()));
    out.insert(stack.back().begin(), stack.back().end());
    prev = &as;
  }
  return out;
}

StateSet sem_cmd(const Command& c, State s) { return sem_cmd_set(c, StateSet{s}); }

namespace {

bool in_ic_traces_ending_in(const trace::Trace& t, State s) {
  return !t.empty() && t.back().to == s && trace::is_consistent(t);
}

trace::Trace glue(const trace::Trace& t, const trace::Trace& u) {
  auto w = t;
  w.insert(w.end(), u.begin(), u.end());
  return w;
}

// {t};P ⊇ {t′} for some t′ ∈ T(σ′), i.e. some t·u with u ∈ P lies in T(σ′).
bool kahn_from_prefix(const trace::Trace& t, const Description& p, State s2) {
  for (const auto& u : p)
    if (in_ic_traces_ending_in(glue(t, u), s2)) return true;
  return false;
}

// The actions Q with P ⊇ Q;P′, at the widened bound.
std::vector<Description> fitting_actions(const Description& p, const Description& p2, const OpSemConfig& cfg,
                                         std::size_t prefix_bound) {
  const std::size_t m = p.bound() + prefix_bound;
  auto pm = p.with_bound(m);
  auto p2m = p2.with_bound(m);
  std::vector<Description> out;
  for (const auto& q : cfg.actions(m))
    if (lang::leq(lang::concat(q, p2m), pm)) out.push_back(q);
  return out;
}

}  // namespace

bool kahn_desc_exists(const trace::StateSpace& space, const Description& p, State s, State s2,
                      std::size_t prefix_bound) {
  for (const auto& t : trace::ic_traces_ending_in(space, s, prefix_bound))
    if (kahn_from_prefix(t, p, s2)) return true;
  return false;
}

bool kahn_desc_forall(const trace::StateSpace& space, const Description& p, State s, State s2,
                      std::size_t prefix_bound) {
  for (const auto& t : trace::ic_traces_ending_in(space, s, prefix_bound))
    if (!kahn_from_prefix(t, p, s2)) return false;
  return true;
}

bool plotkin_desc_exists(const trace::StateSpace& space, const Description& p, State s, const Description& p2,
                         State s2, const OpSemConfig& cfg, std::size_t prefix_bound) {
  auto qs = fitting_actions(p, p2, cfg, prefix_bound);
  for (const auto& t : trace::ic_traces_ending_in(space, s, prefix_bound))
    for (const auto& q : qs)
      if (kahn_from_prefix(t, q, s2)) return true;
  return false;
}

bool plotkin_desc_forall(const trace::StateSpace& space, const Description& p, State s, const Description& p2,
                         State s2, const OpSemConfig& cfg, std::size_t prefix_bound) {
  auto qs = fitting_actions(p, p2, cfg, prefix_bound);
  for (const auto& t : trace::ic_traces_ending_in(space, s, prefix_bound)) {
    bool found = false;
    for (const auto& q : qs)
      if (kahn_from_prefix(t, q, s2)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

Description action_description(const Action& q, std::size_t bound) {
  if (!q) return lang::skip<trace::Step>(bound);
  return trace::atom_description(*q, bound);
}

StateSet action_apply(const Action& q, State s) {
  if (!q) return StateSet{s};
  return trace::atom_apply(*q, s);
}

std::string format_action(const Action& q) { return q ? q->label() : "skip"; }

std::vector<MilnerStep> milner_steps(const Prog& p) {
  using K = Prog::Kind;
  std::vector<MilnerStep> out;
  switch (p.kind()) {
    case K::Atom:
      out.push_back({p.atom(), Prog::skip()});
      break;
    case K::Skip:
    case K::Var:
      break;
    case K::Seq:
      if (p.left().is_skip()) out.push_back({std::nullopt, p.right()});
      for (auto& st : milner_steps(p.left())) out.push_back({st.action, Prog::seq(st.residual, p.right())});
      break;
    case K::Choice:
      for (const auto& b : p.kids()) out.push_back({std::nullopt, b});
      break;
    case K::Star:
      out.push_back({std::nullopt, Prog::skip()});
      out.push_back({std::nullopt, Prog::seq(p.body(), p)});
      break;
    case K::Par:
      if (p.left().is_skip()) out.push_back({std::nullopt, p.right()});
      if (p.right().is_skip()) out.push_back({std::nullopt, p.left()});
      for (auto& st : milner_steps(p.left())) out.push_back({st.action, Prog::par(st.residual, p.right())});
      for (auto& st : milner_steps(p.right())) out.push_back({st.action, Prog::par(p.left(), st.residual)});
      break;
    case K::Rec:
      out.push_back({std::nullopt, prog::unroll(p)});
      break;
  }
  return out;
}

std::vector<PlotkinStep> plotkin_steps(const Prog& p, State s) {
  std::vector<PlotkinStep> out;
  for (const auto& st : milner_steps(p))
    for (State n : action_apply(st.action, s)) out.push_back({st.residual, n});
  return out;
}

namespace {

// Both operands already canonical.
Prog mk_seq(const Prog& l, const Prog& r) {
  if (l.is_skip()) return r;
  if (r.is_skip()) return l;
  if (l.kind() == Prog::Kind::Seq) return Prog::seq(l.left(), mk_seq(l.right(), r));
  return Prog::seq(l, r);
}

}  // namespace

Prog canonical(const Prog& p) {
  using K = Prog::Kind;
  switch (p.kind()) {
    case K::Atom:
    case K::Skip:
    case K::Var:
      return p;
    case K::Seq:
      return mk_seq(canonical(p.left()), canonical(p.right()));
    case K::Par: {
      auto l = canonical(p.left());
      auto r = canonical(p.right());
      if (l.is_skip()) return r;
      if (r.is_skip()) return l;
      return Prog::par(l, r);
    }
    case K::Choice: {
      std::vector<Prog> bs;
      for (const auto& b : p.kids()) bs.push_back(canonical(b));
      std::sort(bs.begin(), bs.end());
      bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
      if (bs.size() == 1) return bs.front();
      return Prog::choice(std::move(bs));
    }
    case K::Star:
      return Prog::star(canonical(p.body()));
    case K::Rec:
      return Prog::rec(p.name(), canonical(p.body()));
  }
  return p;
}

std::vector<Configuration> PlotkinStarResult::path_to(const Configuration& c) const {
  std::vector<Configuration> path;
  auto it = index_.find(c);
  if (it == index_.end()) return path;
  std::size_t i = it->second;
  while (true) {
    path.push_back(reached[i]);
    auto pit = parent_.find(reached[i]);
    if (pit == parent_.end()) break;
    i = pit->second;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

PlotkinStarResult plotkin_star(const Prog& p, State s, std::size_t depth) {
  PlotkinStarResult out;
  Configuration start{p, s};
  out.reached.push_back(start);
  out.index_[start] = 0;
  // The start is kept as given; only residuals are canonicalized.
  std::map<Configuration, std::size_t> seen{{start, 0}};
  if (canonical(p).is_skip()) out.finals.insert(s);

  std::vector<std::size_t> frontier{0};
  for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<std::size_t> next;
    for (std::size_t i : frontier) {
      const Configuration from = out.reached[i];
      for (const auto& st : milner_steps(from.prog)) {
        for (State n : action_apply(st.action, from.state)) {
          Configuration to{canonical(st.residual), n};
          out.transitions.push_back({from, st.action, to});
          if (seen.count(to)) continue;
          const std::size_t idx = out.reached.size();
          seen.emplace(to, idx);
          out.reached.push_back(to);
          out.index_.emplace(to, idx);
          out.parent_.emplace(to, i);
          if (to.prog.is_skip()) out.finals.insert(n);
          next.push_back(idx);
        }
      }
    }
    frontier = std::move(next);
  }
  // Cut off iff some frontier configuration still has an unseen successor.
  for (std::size_t i : frontier) {
    const Configuration& from = out.reached[i];
    for (const auto& st : plotkin_steps(from.prog, from.state))
      if (!seen.count(Configuration{canonical(st.residual), st.next})) {
        out.truncated = true;
        return out;
      }
  }
  return out;
}

namespace {

KahnResult eval(const Prog& p, const StateSet& s, const KahnOptions& opts, std::size_t budget) {
  using K = Prog::Kind;
  KahnResult out;
  if (s.empty()) return out;
  switch (p.kind()) {
    case K::Atom:
      out.states = trace::atom_apply_set(p.atom(), s);
      return out;
    case K::Skip:
      out.states = s;
      return out;
    case K::Var:
      throw ElaborationError("unbound recursion variable '" + p.name() + "'");
    case K::Seq: {
      auto l = eval(p.left(), s, opts, budget);
      auto r = eval(p.right(), l.states, opts, budget);
      r.truncated = r.truncated || l.truncated;
      return r;
    }
    case K::Choice:
      for (const auto& b : p.kids()) {
        auto r = eval(b, s, opts, budget);
        out.states.insert(r.states.begin(), r.states.end());
        out.truncated = out.truncated || r.truncated;
      }
      return out;
    case K::Star: {
      out.states = s;
      StateSet frontier = s;
      for (std::size_t round = 0; !frontier.empty(); ++round) {
        if (round == opts.unroll_bound) {
          out.truncated = true;
          break;
        }
        auto r = eval(p.body(), frontier, opts, budget);
        out.truncated = out.truncated || r.truncated;
        StateSet fresh;
        for (State n : r.states)
          if (out.states.insert(n).second) fresh.insert(n);
        frontier = std::move(fresh);
      }
      return out;
    }
    case K::Rec: {
      if (budget == 0) {
        out.truncated = true;
        return out;
      }
      return eval(prog::unroll(p), s, opts, budget - 1);
    }
    case K::Par: {
      auto c = prog::compile(p, opts.word_bound, opts.unroll_bound);
      out.states = sem_cmd_set(c.command, s);
      auto len = prog::max_word_length(p);
      out.truncated = c.completeness == prog::Completeness::truncated || !len || *len > opts.word_bound;
      return out;
    }
  }
  return out;
}

}  // namespace

KahnResult kahn_eval_set(const Prog& p, const StateSet& s, const KahnOptions& opts) {
  return eval(p, s, opts, opts.unroll_bound);
}

KahnResult kahn_eval(const Prog& p, State s, const KahnOptions& opts) { return kahn_eval_set(p, StateSet{s}, opts); }

}  // namespace tracelang::opsem
