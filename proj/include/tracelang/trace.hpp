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

#ifndef TRACELANG_TRACE_HPP
#define TRACELANG_TRACE_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "tracelang/lang.hpp"

namespace tracelang::trace {

/// A state of a StateSpace, identified by its mixed-radix index.
struct State {
  std::uint32_t index = 0;
  auto operator<=>(const State&) const = default;
};

/// One letter of a trace: a pair of states (σ, σ′).
struct Step {
  State from;
  State to;
  auto operator<=>(const Step&) const = default;
};

using Trace = lang::Word<Step>;
using Description = lang::BoundedLang<Step>;
using StateSet = std::set<State>;

/// Finite store-based state space: an ordered list of variables, each with a
/// finite non-empty integer domain. States are total assignments, numbered in
/// lexicographic order of their value vectors.
class StateSpace {
 public:
  struct Variable {
    std::string name;
    std::vector<int> domain;  // sorted, unique
  };

  StateSpace() = default;
  explicit StateSpace(std::vector<Variable> vars);

  /// Convenience: variables with contiguous ranges lo..hi.
  static StateSpace ranges(const std::vector<std::tuple<std::string, int, int>>& decls);

  std::size_t size() const { return size_; }
  std::size_t var_count() const { return vars_.size(); }
  const std::vector<Variable>& vars() const { return vars_; }
  std::optional<std::size_t> var_index(const std::string& name) const;

  int value(State s, std::size_t var) const;
  std::vector<int> values(State s) const;
  std::optional<State> state_of(std::span<const int> values) const;
  std::optional<State> with_value(State s, std::size_t var, long long value) const;
  std::vector<State> all_states() const;
  StateSet all_state_set() const;

  /// "x=1 y=0"
  std::string format(State s) const;
  /// Sorted name -> value pairs.
  std::vector<std::pair<std::string, int>> to_map(State s) const;
  /// Identifies the space for atom interning.
  const std::string& signature() const { return signature_; }

  bool operator==(const StateSpace& other) const { return signature_ == other.signature_; }

 private:
  std::vector<Variable> vars_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
  std::string signature_;
};

/// Integer/boolean expressions over the variables of a StateSpace. Booleans
/// are 0/1; any non-zero value is true.
class Expr {
 public:
  enum class Op { Const, Var, Neg, Not, Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

  static Expr constant(long long v);
  static Expr variable(std::size_t index, std::string name);
  static Expr unary(Op op, Expr e);
  static Expr binary(Op op, Expr lhs, Expr rhs);

  Op op() const;
  /// nullopt on division or modulus by zero.
  std::optional<long long> eval(std::span<const int> values) const;
  std::optional<long long> eval(const StateSpace& space, State s) const;
  std::set<std::size_t> vars() const;
  std::string to_string() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Expr negate(const Expr& cond);

namespace detail {
struct AtomData;
}

/// A finite binary relation on states, interned: two atoms built over the
/// same space with the same relation share one id.
class Atom {
 public:
  std::uint64_t id() const;
  const std::vector<Step>& rel() const;  // sorted
  const std::string& label() const;
  /// a(σ)
  const std::vector<State>& image(State s) const;
  std::size_t space_size() const;

  friend bool operator==(const Atom& a, const Atom& b) { return a.id() == b.id(); }
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) { return a.id() <=> b.id(); }

 private:
  friend Atom intern_atom(const StateSpace&, std::set<Step>, std::string);
  explicit Atom(std::shared_ptr<const detail::AtomData> d) : data_(std::move(d)) {}
  std::shared_ptr<const detail::AtomData> data_;
};

/// The label of the first interning of a relation is kept.
Atom intern_atom(const StateSpace& space, std::set<Step> rel, std::string label);

/// x := e. Pairs whose result falls outside x's domain (or divides by zero)
/// are absent, so the atom is partial like a failed guard.
Atom mk_atom_assign(const StateSpace& space, const std::string& var, const Expr& e);
/// assume c: {(σ,σ) | c holds in σ}.
Atom mk_atom_assume(const StateSpace& space, const Expr& cond);
/// Several assignments executed in order as one indivisible step.
Atom mk_atom_block(const StateSpace& space, const std::vector<std::pair<std::string, Expr>>& assigns);

/// Variables the atom reads or writes: every other variable is left
/// unchanged and does not influence the atom's behaviour.
std::vector<std::size_t> footprint(const StateSpace& space, const Atom& a);

bool is_consistent(std::span<const Step> t);

/// T(σ) at a length bound: consistent traces of length 1..k whose last
/// pair ends in σ.
Description ic_traces_ending_in(const StateSpace& space, State s, std::size_t k);

/// Regression hook for "Inconsistent ; P ⊆ Inconsistent": appends every
/// word of P to a deterministic sample of inconsistent prefixes.
bool is_inconsistent_closed(const StateSpace& space, const Description& p,
                            std::size_t sample_cap = 4096);

StateSet atom_apply(const Atom& a, State s);
StateSet atom_apply_set(const Atom& a, const StateSet& s);

/// The atom as a length-one description.
Description atom_description(const Atom& a, std::size_t bound);

std::string format_step(const StateSpace& space, const Step& st);
std::string format_trace(const StateSpace& space, const Trace& t);
std::string format_states(const StateSpace& space, const StateSet& s);

}  // namespace tracelang::trace

#endif  // TRACELANG_TRACE_HPP
