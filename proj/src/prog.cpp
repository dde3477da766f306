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

#include "tracelang/prog.hpp"

#include <algorithm>

#include "tracelang/error.hpp"

namespace tracelang::prog {

struct Prog::Node {
  Kind kind;
  std::optional<Atom> atom;
  std::string name;
  std::vector<Prog> kids;
};

namespace {

std::shared_ptr<Prog::Node> make_node(Prog::Kind k) {
  auto n = std::make_shared<Prog::Node>();
  n->kind = k;
  return n;
}

}  // namespace

Prog Prog::atom(Atom a) {
  auto n = make_node(Kind::Atom);
  n->atom = std::move(a);
  return Prog(std::move(n));
}

Prog Prog::skip() {
  static const Prog s(make_node(Kind::Skip));
  return s;
}

Prog Prog::seq(Prog p, Prog q) {
  auto n = make_node(Kind::Seq);
  n->kids = {std::move(p), std::move(q)};
  return Prog(std::move(n));
}

Prog Prog::choice(std::vector<Prog> branches) {
  auto n = make_node(Kind::Choice);
  n->kids = std::move(branches);
  return Prog(std::move(n));
}

Prog Prog::star(Prog p) {
  auto n = make_node(Kind::Star);
  n->kids = {std::move(p)};
  return Prog(std::move(n));
}

Prog Prog::par(Prog p, Prog q) {
  auto n = make_node(Kind::Par);
  n->kids = {std::move(p), std::move(q)};
  return Prog(std::move(n));
}

Prog Prog::rec(std::string name, Prog body) {
  auto n = make_node(Kind::Rec);
  n->name = std::move(name);
  n->kids = {std::move(body)};
  return Prog(std::move(n));
}

Prog Prog::var(std::string name) {
  auto n = make_node(Kind::Var);
  n->name = std::move(name);
  return Prog(std::move(n));
}

Prog::Kind Prog::kind() const { return node_->kind; }

const Atom& Prog::atom() const {
  if (!node_->atom) throw Error("Prog::atom on a non-atom node");
  return *node_->atom;
}

const std::vector<Prog>& Prog::kids() const { return node_->kids; }
const std::string& Prog::name() const { return node_->name; }

std::strong_ordering operator<=>(const Prog& a, const Prog& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Prog::Kind::Atom:
      return a.atom() <=> b.atom();
    case Prog::Kind::Rec:
    case Prog::Kind::Var:
      if (auto c = a.name() <=> b.name(); c != 0) return c;
      break;
    default:
      break;
  }
  const auto& ka = a.kids();
  const auto& kb = b.kids();
  if (auto c = ka.size() <=> kb.size(); c != 0) return c;
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (auto c = ka[i] <=> kb[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string Prog::to_string() const {
  switch (kind()) {
    case Kind::Atom: return atom().label();
    case Kind::Skip: return "skip";
    case Kind::Var: return name();
    case Kind::Seq: return "(" + left().to_string() + " ; " + right().to_string() + ")";
    case Kind::Par: return "(" + left().to_string() + " || " + right().to_string() + ")";
    case Kind::Star: return "(" + body().to_string() + ")*";
    case Kind::Rec: return "(rec " + name() + ". " + body().to_string() + ")";
    case Kind::Choice: {
      if (kids().empty()) return "abort";
      std::string out = "(";
      for (std::size_t i = 0; i < kids().size(); ++i) {
        if (i) out += " + ";
        out += kids()[i].to_string();
      }
      return out + ")";
    }
  }
  return "?";
}

namespace {

void collect_free(const Prog& p, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (p.kind()) {
    case Prog::Kind::Var:
      if (!bound.count(p.name())) out.insert(p.name());
      return;
    case Prog::Kind::Rec: {
      const bool fresh = bound.insert(p.name()).second;
      collect_free(p.body(), bound, out);
      if (fresh) bound.erase(p.name());
      return;
    }
    default:
      for (const auto& k : p.kids()) collect_free(k, bound, out);
  }
}

}  // namespace

std::set<std::string> free_vars(const Prog& p) {
  std::set<std::string> bound, out;
  collect_free(p, bound, out);
  return out;
}

bool is_closed(const Prog& p) { return free_vars(p).empty(); }

Prog substitute(const Prog& p, const std::string& name, const Prog& replacement) {
  switch (p.kind()) {
    case Prog::Kind::Var:
      return p.name() == name ? replacement : p;
    case Prog::Kind::Atom:
    case Prog::Kind::Skip:
      return p;
    case Prog::Kind::Rec:
      if (p.name() == name) return p;
      return Prog::rec(p.name(), substitute(p.body(), name, replacement));
    case Prog::Kind::Seq:
      return Prog::seq(substitute(p.left(), name, replacement), substitute(p.right(), name, replacement));
    case Prog::Kind::Par:
      return Prog::par(substitute(p.left(), name, replacement), substitute(p.right(), name, replacement));
    case Prog::Kind::Star:
      return Prog::star(substitute(p.body(), name, replacement));
    case Prog::Kind::Choice: {
      std::vector<Prog> bs;
      for (const auto& b : p.kids()) bs.push_back(substitute(b, name, replacement));
      return Prog::choice(std::move(bs));
    }
  }
  return p;
}

Prog unroll(const Prog& rec) {
  if (rec.kind() != Prog::Kind::Rec) throw Error("unroll: not a rec node");
  return substitute(rec.body(), rec.name(), rec);
}

namespace {

void collect_atoms(const Prog& p, std::vector<Atom>& out) {
  if (p.kind() == Prog::Kind::Atom) {
    if (std::find(out.begin(), out.end(), p.atom()) == out.end()) out.push_back(p.atom());
    return;
  }
  for (const auto& k : p.kids()) collect_atoms(k, out);
}

}  // namespace

std::vector<Atom> atoms_of(const Prog& p) {
  std::vector<Atom> out;
  collect_atoms(p, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> max_word_length(const Prog& p) {
  switch (p.kind()) {
    case Prog::Kind::Atom: return 1;
    case Prog::Kind::Skip: return 0;
    case Prog::Kind::Rec:
    case Prog::Kind::Var: return std::nullopt;
    case Prog::Kind::Star: {
      auto b = max_word_length(p.body());
      if (b && *b == 0) return 0;
      return std::nullopt;
    }
    case Prog::Kind::Seq:
    case Prog::Kind::Par: {
      auto l = max_word_length(p.left());
      auto r = max_word_length(p.right());
      if (!l || !r) return std::nullopt;
      return *l + *r;
    }
    case Prog::Kind::Choice: {
      std::size_t m = 0;
      for (const auto& b : p.kids()) {
        auto l = max_word_length(b);
        if (!l) return std::nullopt;
        m = std::max(m, *l);
      }
      return m;
    }
  }
  return std::nullopt;
}

Prog while_loop(const trace::StateSpace& space, const trace::Expr& cond, Prog body) {
  auto guard = Prog::atom(trace::mk_atom_assume(space, cond));
  auto exit = Prog::atom(trace::mk_atom_assume(space, trace::negate(cond)));
  return Prog::seq(Prog::star(Prog::seq(guard, std::move(body))), exit);
}

Prog if_then_else(const trace::StateSpace& space, const trace::Expr& cond, Prog then_p, Prog else_p) {
  auto yes = Prog::atom(trace::mk_atom_assume(space, cond));
  auto no = Prog::atom(trace::mk_atom_assume(space, trace::negate(cond)));
  return Prog::choice({Prog::seq(yes, std::move(then_p)), Prog::seq(no, std::move(else_p))});
}

fixpoint::FnExpr<Atom> to_fn(const Prog& p, std::size_t word_bound) {
  using F = fixpoint::FnExpr<Atom>;
  switch (p.kind()) {
    case Prog::Kind::Atom: return F::constant(lang::singleton<Atom>(word_bound, {p.atom()}));
    case Prog::Kind::Skip: return F::constant(lang::skip<Atom>(word_bound));
    case Prog::Kind::Var: return F::var(p.name());
    case Prog::Kind::Seq: return F::concat(to_fn(p.left(), word_bound), to_fn(p.right(), word_bound));
    case Prog::Kind::Par: return F::shuffle(to_fn(p.left(), word_bound), to_fn(p.right(), word_bound));
    case Prog::Kind::Star: return F::star(to_fn(p.body(), word_bound));
    case Prog::Kind::Rec: return F::mu(p.name(), to_fn(p.body(), word_bound));
    case Prog::Kind::Choice: {
      if (p.kids().empty()) return F::constant(lang::empty<Atom>(word_bound));
      auto acc = to_fn(p.kids()[0], word_bound);
      for (std::size_t i = 1; i < p.kids().size(); ++i) acc = F::unite(acc, to_fn(p.kids()[i], word_bound));
      return acc;
    }
  }
  throw Error("to_fn: unknown node");
}

Compiled compile(const Prog& p, std::size_t word_bound, std::size_t unroll_bound) {
  if (auto fv = free_vars(p); !fv.empty()) throw ElaborationError("unbound recursion variable '" + *fv.begin() + "'");
  fixpoint::EvalStats stats;
  stats.max_rounds = unroll_bound;
  auto c = fixpoint::eval(to_fn(p, word_bound), fixpoint::Env<Atom>{}, word_bound, stats);
  return Compiled{std::move(c), stats.truncated ? Completeness::truncated : Completeness::exact};
}

Description traces_of_atom_seq(const AtomSeq& as, std::size_t bound) {
  auto out = lang::skip<trace::Step>(bound);
  for (std::size_t i = as.size(); i-- > 0;) out = lang::concat(trace::atom_description(as[i], bound), out);
  return out;
}

Description denote(const Command& c) {
  Description out(c.bound());
  for (const auto& as : c)
    for (const auto& t : traces_of_atom_seq(as, c.bound())) out.insert(t);
  return out;
}

std::string format_atom_seq(const AtomSeq& as) {
  return lang::format_word(as, [](const Atom& a) { return a.label(); }, ", ");
}

std::string format_command(const Command& c) {
  return lang::format_lang(c, [](const Atom& a) { return a.label(); }, ", ");
}

}  // namespace tracelang::prog
