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

#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "tracelang/prog.hpp"

using namespace tracelang;
using namespace fx;
using prog::Command;

namespace {

Command cmd(std::size_t n, std::initializer_list<prog::AtomSeq> ws) { return Command(n, ws); }

// ⟨as⟩ by definition: every choice of one pair per atom.
trace::Description brute_atom_seq(const prog::AtomSeq& as, std::size_t n) {
  trace::Description out(n);
  std::vector<trace::Trace> layer{trace::Trace{}};
  for (const auto& a : as) {
    std::vector<trace::Trace> next;
    for (const auto& t : layer)
      for (const auto& stp : a.rel()) {
        auto u = t;
        u.push_back(stp);
        next.push_back(u);
      }
    layer = std::move(next);
  }
  for (auto& t : layer) out.insert(t);
  return out;
}

}  // namespace

TEST_CASE("compile basics") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  auto a = incr(sp, "x");
  auto b = assign(sp, "x", k(0));
  CHECK(prog::compile(Prog::skip(), 4, 4).command.words() == Command::set_type{{}});
  CHECK(prog::compile(seq(a, b), 4, 4).command.words() == Command::set_type{{a.atom(), b.atom()}});
  CHECK(prog::compile(par(a, b), 4, 4).command.words() ==
        Command::set_type{{a.atom(), b.atom()}, {b.atom(), a.atom()}});
  CHECK(prog::compile(Prog::choice({}), 4, 4).command.is_empty());
  CHECK_THROWS_AS(prog::compile(Prog::var("X"), 4, 4), ElaborationError);
}

TEST_CASE("compile of recursion reports completeness") {
  auto sp = StateSpace::ranges({{"x", 0, 3}});
  auto a = incr(sp, "x");
  // rec X . skip + a ; X  is a* and converges once words saturate the bound.
  auto r = Prog::rec("X", Prog::choice({Prog::skip(), seq(a, Prog::var("X"))}));
  auto c = prog::compile(r, 4, 16);
  CHECK(c.completeness == prog::Completeness::exact);
  CHECK(lang::eq(c.command, prog::compile(Prog::star(a), 4, 16).command));
  auto cut = prog::compile(r, 4, 2);
  CHECK(cut.completeness == prog::Completeness::truncated);
  CHECK(lang::leq(cut.command, c.command));
}

TEST_CASE("substitution, unrolling and free variables") {
  auto sp = StateSpace::ranges({{"x", 0, 1}});
  auto cd = countdown(StateSpace::ranges({{"x", 0, 3}}));
  CHECK(prog::is_closed(cd));
  CHECK(prog::free_vars(cd.body()) == std::set<std::string>{"X"});
  auto u = prog::unroll(cd);
  CHECK(prog::is_closed(u));
  auto shadow = Prog::rec("X", Prog::var("X"));
  CHECK(prog::substitute(shadow, "X", Prog::skip()) == shadow);
  CHECK(prog::max_word_length(par(incr(sp, "x"), seq(incr(sp, "x"), incr(sp, "x")))) == 3u);
  CHECK_FALSE(prog::max_word_length(Prog::star(incr(sp, "x"))).has_value());
}

TEST_CASE("traces_of_atom_seq and denote") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  auto a = trace::mk_atom_assign(sp, "x", add(v(sp, "x"), k(1)));
  auto b = trace::mk_atom_assign(sp, "x", k(0));
  CHECK(lang::eq(prog::traces_of_atom_seq({}, 3), lang::skip<trace::Step>(3)));
  CHECK(lang::eq(prog::traces_of_atom_seq({a}, 3), trace::atom_description(a, 3)));
  auto ab = prog::traces_of_atom_seq({a, b}, 3);
  CHECK(lang::eq(ab, brute_atom_seq({a, b}, 3)));
  CHECK(ab.size() == a.rel().size() * b.rel().size());
  bool has_inconsistent = false;
  for (const auto& t : ab) has_inconsistent = has_inconsistent || !trace::is_consistent(t);
  CHECK(has_inconsistent);

  CHECK(lang::eq(prog::denote(lang::skip<trace::Atom>(3)), lang::skip<trace::Step>(3)));
  CHECK(lang::eq(prog::denote(cmd(3, {{a}})), trace::atom_description(a, 3)));
}

TEST_CASE("homomorphism clauses on random commands") {
  auto sp = StateSpace::ranges({{"x", 0, 1}, {"y", 0, 1}});
  std::vector<trace::Atom> atoms{
      trace::mk_atom_assign(sp, "x", add(v(sp, "x"), k(1))), trace::mk_atom_assign(sp, "y", v(sp, "x")),
      trace::mk_atom_assume(sp, eq(v(sp, "y"), k(0))), trace::mk_atom_assign(sp, "x", k(0))};
  std::mt19937 rng(42);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 3;
    auto c1 = random_command(rng, atoms, n), c2 = random_command(rng, atoms, n);
    auto d1 = prog::denote(c1), d2 = prog::denote(c2);
    CHECK(lang::eq(prog::denote(lang::concat(c1, c2)), lang::concat(d1, d2)));
    CHECK(lang::eq(prog::denote(lang::unite(c1, c2)), lang::unite(d1, d2)));
    CHECK(lang::eq(prog::denote(lang::shuffle(c1, c2)), lang::shuffle(d1, d2)));
    CHECK(lang::eq(prog::denote(lang::star(c1)), lang::star(d1)));
  }
}

TEST_CASE("program-level algebra") {
  auto sp = StateSpace::ranges({{"x", 0, 2}, {"y", 0, 2}});
  auto p = seq(incr(sp, "x"), Prog::star(incr(sp, "y")));
  auto q = Prog::choice({incr(sp, "y"), assign(sp, "x", k(0))});
  auto c = [](const Prog& r) { return prog::compile(r, 4, 8).command; };
  CHECK(lang::eq(c(seq(p, Prog::skip())), c(p)));
  CHECK(lang::eq(c(par(p, q)), c(par(q, p))));
  CHECK(lang::eq(c(par(p, Prog::skip())), c(p)));
}

TEST_CASE("while and if desugar to their expansions") {
  auto sp = StateSpace::ranges({{"x", 0, 3}});
  auto cond = lt(v(sp, "x"), k(2));
  auto body = incr(sp, "x");
  auto w = prog::while_loop(sp, cond, body);
  auto yes = assume(sp, cond);
  auto no = Prog::atom(trace::mk_atom_assume(sp, trace::negate(cond)));
  auto hand = seq(Prog::star(seq(yes, body)), no);
  CHECK(w == hand);
  CHECK(lang::eq(prog::compile(w, 6, 8).command, prog::compile(hand, 6, 8).command));

  auto ite = prog::if_then_else(sp, cond, body, Prog::skip());
  auto hand_ite = Prog::choice({seq(yes, body), seq(no, Prog::skip())});
  CHECK(lang::eq(prog::compile(ite, 4, 4).command, prog::compile(hand_ite, 4, 4).command));
}

TEST_CASE("structural ordering and printing") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  auto a = incr(sp, "x");
  CHECK(seq(a, Prog::skip()) == seq(incr(sp, "x"), Prog::skip()));
  CHECK(seq(a, Prog::skip()) != seq(Prog::skip(), a));
  CHECK(par(a, Prog::star(a)).to_string() == "(x := x + 1 || (x := x + 1)*)");
  CHECK(countdown(StateSpace::ranges({{"x", 0, 3}})).to_string() ==
        "(rec X. ((assume x > 0 ; (x := x - 1 ; X)) + assume x == 0))");
}
