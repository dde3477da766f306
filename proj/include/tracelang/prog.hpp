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

#ifndef TRACELANG_PROG_HPP
#define TRACELANG_PROG_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tracelang/fixpoint.hpp"
#include "tracelang/lang.hpp"
#include "tracelang/trace.hpp"

namespace tracelang::prog {

using trace::Atom;
using trace::Description;
/// A language over atoms.
using Command = lang::BoundedLang<Atom>;
using AtomSeq = lang::Word<Atom>;

/// Immutable AST of the concurrent imperative language. if/while are not
/// nodes; see while_loop and if_then_else.
class Prog {
 public:
  enum class Kind { Atom, Skip, Seq, Choice, Star, Par, Rec, Var };

  static Prog atom(Atom a);
  static Prog skip();
  static Prog seq(Prog p, Prog q);
  /// Zero branches is the program ⊥.
  static Prog choice(std::vector<Prog> branches);
  static Prog star(Prog p);
  static Prog par(Prog p, Prog q);
  static Prog rec(std::string name, Prog body);
  static Prog var(std::string name);

  Kind kind() const;
  bool is_skip() const { return kind() == Kind::Skip; }
  const Atom& atom() const;
  const std::vector<Prog>& kids() const;
  const Prog& left() const { return kids().at(0); }
  const Prog& right() const { return kids().at(1); }
  const Prog& body() const { return kids().at(0); }
  const std::string& name() const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Prog& a, const Prog& b);
  friend bool operator==(const Prog& a, const Prog& b) { return (a <=> b) == 0; }

  struct Node;

 private:
  explicit Prog(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::set<std::string> free_vars(const Prog& p);
bool is_closed(const Prog& p);
/// Capture-avoiding for our purposes: an inner rec binding the same name
/// shadows the substitution.
Prog substitute(const Prog& p, const std::string& name, const Prog& replacement);
/// rec x. b  ↦  b[x := rec x. b]
Prog unroll(const Prog& rec);
std::vector<Atom> atoms_of(const Prog& p);
/// Longest atom sequence of the program, or nullopt when star or rec may make
/// it unbounded (conservative).
std::optional<std::size_t> max_word_length(const Prog& p);

/// while b do p end  ≡  (assume b ; p)* ; assume ¬b
Prog while_loop(const trace::StateSpace& space, const trace::Expr& cond, Prog body);
/// if b then p else q end  ≡  (assume b ; p) + (assume ¬b ; q)
Prog if_then_else(const trace::StateSpace& space, const trace::Expr& cond, Prog then_p, Prog else_p);

enum class Completeness { exact, truncated };

struct Compiled {
  Command command;
  Completeness completeness = Completeness::exact;
};

/// The command denoted by a program, complete up to `word_bound`. Recursion
/// is computed by Kleene iteration capped at `unroll_bound` rounds; hitting
/// the cap marks the result truncated (an under-approximation).
Compiled compile(const Prog& p, std::size_t word_bound, std::size_t unroll_bound);

/// The program as a term of the fixpoint grammar (rec ↦ μ).
fixpoint::FnExpr<Atom> to_fn(const Prog& p, std::size_t word_bound);

/// ⟨[]⟩ = skip, ⟨a:as⟩ = a ; ⟨as⟩. No consistency filtering.
Description traces_of_atom_seq(const AtomSeq& as, std::size_t bound);
/// ⟨C⟩ = ⋃{⟨as⟩ | as ∈ C}
Description denote(const Command& c);

std::string format_atom_seq(const AtomSeq& as);
std::string format_command(const Command& c);

}  // namespace tracelang::prog

#endif  // TRACELANG_PROG_HPP
