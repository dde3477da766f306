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

#ifndef TRACELANG_FIXPOINT_HPP
#define TRACELANG_FIXPOINT_HPP

// Least fixpoints of monotone functions on bounded languages.
//
// Functions are syntax trees over a fixed operator grammar (constants, named
// variables, ∪, ∩, ;, ∥, star and a nested least-fixpoint binder), so every
// function is monotone and Scott-continuous by construction and can be
// iterated by Kleene's construction ⋃ fⁿ(⊥).

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tracelang/error.hpp"
#include "tracelang/lang.hpp"

namespace tracelang::fixpoint {

template <typename A>
class FnExpr {
 public:
  enum class Kind { Const, Var, Union, Inter, Concat, Shuffle, Star, Mu };

  static FnExpr constant(lang::BoundedLang<A> value) {
    auto n = std::make_shared<Node>(Kind::Const);
    n->value = std::move(value);
    return FnExpr(std::move(n));
  }
  static FnExpr var(std::string name) {
    auto n = std::make_shared<Node>(Kind::Var);
    n->name = std::move(name);
    return FnExpr(std::move(n));
  }
  static FnExpr unite(FnExpr l, FnExpr r) { return binary(Kind::Union, std::move(l), std::move(r)); }
  static FnExpr intersect(FnExpr l, FnExpr r) { return binary(Kind::Inter, std::move(l), std::move(r)); }
  static FnExpr concat(FnExpr l, FnExpr r) { return binary(Kind::Concat, std::move(l), std::move(r)); }
  static FnExpr shuffle(FnExpr l, FnExpr r) { return binary(Kind::Shuffle, std::move(l), std::move(r)); }
  static FnExpr star(FnExpr e) {
    auto n = std::make_shared<Node>(Kind::Star);
    n->kids.push_back(std::move(e));
    return FnExpr(std::move(n));
  }
  /// μ name. body
  static FnExpr mu(std::string name, FnExpr body) {
    auto n = std::make_shared<Node>(Kind::Mu);
    n->name = std::move(name);
    n->kids.push_back(std::move(body));
    return FnExpr(std::move(n));
  }

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const lang::BoundedLang<A>& value() const { return *node_->value; }
  const std::vector<FnExpr>& kids() const { return node_->kids; }

 private:
  struct Node {
    explicit Node(Kind k) : kind(k) {}
    Kind kind;
    std::optional<lang::BoundedLang<A>> value;
    std::string name;
    std::vector<FnExpr> kids;
  };
  static FnExpr binary(Kind k, FnExpr l, FnExpr r) {
    auto n = std::make_shared<Node>(k);
    n->kids.push_back(std::move(l));
    n->kids.push_back(std::move(r));
    return FnExpr(std::move(n));
  }
  explicit FnExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

template <typename A>
using Env = std::map<std::string, lang::BoundedLang<A>>;

/// Tracks whether any nested μ ran out of rounds during an evaluation.
struct EvalStats {
  bool truncated = false;
  std::size_t max_rounds = 64;
};

template <typename A>
lang::BoundedLang<A> eval(const FnExpr<A>& e, const Env<A>& env, std::size_t bound, EvalStats& stats);

template <typename A>
struct LfpResult {
  lang::BoundedLang<A> value;
  bool converged = false;
  std::size_t rounds = 0;
};

/// λ param. body
template <typename A>
struct MonotoneFn {
  std::string param;
  FnExpr<A> body;

  lang::BoundedLang<A> operator()(const lang::BoundedLang<A>& x) const {
    EvalStats stats;
    return apply(x, Env<A>{}, stats);
  }

  lang::BoundedLang<A> apply(const lang::BoundedLang<A>& x, Env<A> env, EvalStats& stats) const {
    const std::size_t bound = x.bound();
    env.insert_or_assign(param, x);
    return eval(body, env, bound, stats);
  }
};

/// Kleene iteration ⊥, f(⊥), f²(⊥), ... until two successive iterates are
/// equal at the bound, or `max_rounds` applications have been made.
template <typename A>
LfpResult<A> lfp_bounded(const MonotoneFn<A>& f, std::size_t bound, std::size_t max_rounds,
                         const Env<A>& env = {}, EvalStats* stats = nullptr) {
  EvalStats local;
  local.max_rounds = max_rounds;
  EvalStats& st = stats ? *stats : local;
  LfpResult<A> out{lang::empty<A>(bound), false, 0};
  while (out.rounds < max_rounds) {
    auto next = f.apply(out.value, env, st);
    ++out.rounds;
    if (lang::eq(next, out.value)) {
      out.converged = true;
      return out;
    }
    out.value = std::move(next);
  }
  return out;
}

template <typename A>
lang::BoundedLang<A> eval(const FnExpr<A>& e, const Env<A>& env, std::size_t bound, EvalStats& stats) {
  using Kind = typename FnExpr<A>::Kind;
  switch (e.kind()) {
    case Kind::Const:
      if (e.value().bound() != bound) throw BoundMismatch(e.value().bound(), bound);
      return e.value();
    case Kind::Var: {
      auto it = env.find(e.name());
      if (it == env.end()) throw ElaborationError("unbound recursion variable '" + e.name() + "'");
      return it->second;
    }
    case Kind::Union:
      return lang::unite(eval(e.kids()[0], env, bound, stats), eval(e.kids()[1], env, bound, stats));
    case Kind::Inter:
      return lang::intersect(eval(e.kids()[0], env, bound, stats), eval(e.kids()[1], env, bound, stats));
    case Kind::Concat:
      return lang::concat(eval(e.kids()[0], env, bound, stats), eval(e.kids()[1], env, bound, stats));
    case Kind::Shuffle:
      return lang::shuffle(eval(e.kids()[0], env, bound, stats), eval(e.kids()[1], env, bound, stats));
    case Kind::Star:
      return lang::star(eval(e.kids()[0], env, bound, stats));
    case Kind::Mu: {
      MonotoneFn<A> inner{e.name(), e.kids()[0]};
      auto r = lfp_bounded(inner, bound, stats.max_rounds, env, &stats);
      if (!r.converged) stats.truncated = true;
      return r.value;
    }
  }
  throw Error("fixpoint::eval: unknown node");
}

template <typename A>
bool is_directed(const std::vector<lang::BoundedLang<A>>& family) {
  if (family.empty()) return false;
  for (const auto& p : family)
    for (const auto& q : family) {
      bool bounded = false;
      for (const auto& r : family)
        if (lang::leq(p, r) && lang::leq(q, r)) {
          bounded = true;
          break;
        }
      if (!bounded) return false;
    }
  return true;
}

/// Literal check of f(⋃X) = ⋃{f(P) | P ∈ X} on each sampled family; families
/// that are not directed are skipped.
template <typename A>
bool is_scott_continuous(const MonotoneFn<A>& f, const std::vector<std::vector<lang::BoundedLang<A>>>& samples) {
  for (const auto& family : samples) {
    if (!is_directed(family)) continue;
    const std::size_t bound = family.front().bound();
    std::vector<lang::BoundedLang<A>> images;
    for (const auto& p : family) images.push_back(f(p));
    if (!lang::eq(f(lang::big_union(family, bound)), lang::big_union(images, bound))) return false;
  }
  return true;
}

}  // namespace tracelang::fixpoint

#endif  // TRACELANG_FIXPOINT_HPP
