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

#include "doctest.h"
#include "fixtures.hpp"
#include "tracelang/opsem.hpp"

using namespace tracelang;
using namespace fx;
using namespace tracelang::opsem;
using trace::Step;

namespace {

using CL = lang::BoundedLang<char>;
lang::Word<char> w(const char* s) { return lang::Word<char>(s, s + std::char_traits<char>::length(s)); }

std::vector<int> xs(const StateSpace& sp, const StateSet& s, const std::string& var) {
  std::vector<int> out;
  for (State x : s) out.push_back(sp.value(x, *sp.var_index(var)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST_CASE("abstract judgements") {
  const std::size_t n = 3;
  CL p(n, {w("a"), w("ab")}), skip = lang::skip<char>(n), bot = lang::empty<char>(n);
  CHECK(hoare_abstract(p, skip, p));
  CHECK(hoare_abstract(bot, p, bot));
  CHECK(hoare_abstract(CL(n, {w("a")}), CL(n, {w("b")}), CL(n, {w("ab")})));
  std::vector<CL> actions{skip, CL(n, {w("a")})};
  CHECK(milner_abstract(lang::concat(skip, p), skip, p, actions));
  CHECK(milner_abstract(CL(n, {w("a")}), CL(n, {w("a")}), skip, actions));
  CHECK_FALSE(milner_abstract(p, CL(n, {w("b")}), skip, actions));
  CL s(n, {w("c")});
  CHECK(plotkin_abstract(lang::concat(skip, p), s, p, s, actions));
  CHECK(plotkin_abstract(lang::star(p), s, skip, s, actions));
  CHECK_FALSE(plotkin_abstract(bot, s, skip, CL(n, {w("ca")}), actions));
  CHECK(kahn_abstract(skip, s, s));
  CHECK(kahn_abstract(p, s, bot));
  CHECK(kahn_abstract(CL(n, {w("x")}), CL(n, {w("w")}), CL(n, {w("wx")})));
}

TEST_CASE("description-level judgements") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  const std::size_t n = 3;
  auto a = trace::mk_atom_assign(sp, "x", add(v(sp, "x"), k(1)));
  OpSemConfig cfg{{a}};
  State s0 = st(sp, {0}), s1 = st(sp, {1}), s2 = st(sp, {2});
  auto ad = trace::atom_description(a, n);
  auto skip = lang::skip<Step>(n);
  CHECK(plotkin_desc(ad, s0, skip, s1, cfg));
  CHECK_FALSE(plotkin_desc(ad, s0, skip, s2, cfg));
  CHECK(plotkin_desc(lang::concat(skip, ad), s0, ad, s0, cfg));
  CHECK(kahn_desc(skip, s1, s1));
  for (State x : sp.all_states())
    for (State y : sp.all_states()) CHECK(kahn_desc(ad, x, y) == trace::atom_apply(a, x).count(y) > 0);
  CHECK_FALSE(kahn_desc(Description(n, {trace::Trace{{s0, s1}, {s2, s2}}}), s0, s2));
  CHECK(sem(skip, s1) == StateSet{s1});
  CHECK(sem(ad, s0) == StateSet{s1});
}

TEST_CASE("parallel atomic increments") {
  auto sp = StateSpace::ranges({{"x", 0, 7}});
  auto p = par(incr(sp, "x"), incr(sp, "x"));
  auto c = prog::compile(p, 4, 4).command;
  CHECK(xs(sp, sem_cmd(c, st(sp, {0})), "x") == std::vector<int>{2});
  CHECK(sem_cmd(c, st(sp, {0})) == sem(prog::denote(c), st(sp, {0})));
  auto star = plotkin_star(p, st(sp, {0}), 4);
  CHECK(star.reached.size() > 1);
  CHECK(star.finals == StateSet{st(sp, {2})});
  auto kr = kahn_eval(p, st(sp, {0}));
  CHECK(kr.states == StateSet{st(sp, {2})});
  CHECK_FALSE(kr.truncated);
}

TEST_CASE("racy increment yields {1,2} under both readings") {
  auto sp = StateSpace::ranges({{"x", 0, 3}, {"t1", 0, 3}, {"t2", 0, 3}});
  auto p = racy_increment(sp);
  auto s = st(sp, {0, 0, 0});
  auto kr = kahn_eval(p, s);
  CHECK(xs(sp, kr.states, "x") == std::vector<int>{1, 2});
  CHECK_FALSE(kr.truncated);
  auto ps = plotkin_star(p, s, 16);
  CHECK_FALSE(ps.truncated);
  CHECK(ps.finals == kr.states);
}

TEST_CASE("milner_steps") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  auto a = incr(sp, "x");
  auto sa = milner_steps(a);
  REQUIRE(sa.size() == 1);
  CHECK(sa[0].action == a.atom());
  CHECK(sa[0].residual.is_skip());

  auto star = Prog::star(a);
  auto ss = milner_steps(star);
  CHECK(ss.size() == 2);
  CHECK_FALSE(ss[0].action.has_value());
  CHECK(ss[0].residual.is_skip());
  CHECK(ss[1].residual == seq(a, star));

  auto pc = milner_steps(par(Prog::skip(), a));
  bool found = false;
  for (const auto& st : pc) found = found || (!st.action && st.residual == a);
  CHECK(found);

  auto cs = milner_steps(Prog::choice({a, Prog::skip()}));
  CHECK(cs.size() == 2);
}

TEST_CASE("plotkin_steps and plotkin_star") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  auto a = incr(sp, "x");
  auto s0 = st(sp, {0});
  auto p = seq(Prog::skip(), a);
  bool found = false;
  for (const auto& st : plotkin_steps(p, s0)) found = found || (st.residual == a && st.next == s0);
  CHECK(found);
  auto z = plotkin_star(p, s0, 0);
  REQUIRE(z.reached.size() == 1);
  CHECK(z.reached[0].prog == p);
  CHECK(z.reached[0].state == s0);
  CHECK(z.truncated);
}

TEST_CASE("while loop: big-step and small-step agree") {
  auto sp = StateSpace::ranges({{"x", 0, 3}});
  auto w = prog::while_loop(sp, lt(v(sp, "x"), k(3)), incr(sp, "x"));
  auto s0 = st(sp, {0});
  auto kr = kahn_eval(w, s0);
  CHECK(kr.states == StateSet{st(sp, {3})});
  CHECK_FALSE(kr.truncated);
  auto ps = plotkin_star(w, s0, 64);
  CHECK_FALSE(ps.truncated);
  CHECK(ps.finals == kr.states);
  // The compiled command only sees loops that fit the word bound.
  CHECK(sem_cmd(prog::compile(w, 7, 8).command, s0) == kr.states);
  CHECK(sem_cmd(prog::compile(w, 6, 8).command, s0).empty());
}

TEST_CASE("recursive countdown") {
  auto sp = StateSpace::ranges({{"x", 0, 3}});
  auto cd = countdown(sp);
  for (int x0 = 0; x0 <= 3; ++x0) {
    auto kr = kahn_eval(cd, st(sp, {x0}));
    CHECK(kr.states == StateSet{st(sp, {0})});
    CHECK_FALSE(kr.truncated);
    auto ps = plotkin_star(cd, st(sp, {x0}), 64);
    CHECK(ps.finals == kr.states);
  }
  KahnOptions shallow{8, 2};
  auto cut = kahn_eval(cd, st(sp, {3}), shallow);
  CHECK(cut.truncated);
  CHECK(cut.states.empty());
}

TEST_CASE("kahn_eval agrees with sem_cmd of the compiled command") {
  auto sp = StateSpace::ranges({{"x", 0, 2}, {"y", 0, 2}});
  std::vector<Prog> progs{
      seq(incr(sp, "x"), assign(sp, "y", v(sp, "x"))),
      par(incr(sp, "x"), seq(assign(sp, "y", v(sp, "x")), incr(sp, "x"))),
      Prog::choice({incr(sp, "y"), seq(assume(sp, eq(v(sp, "x"), k(0))), incr(sp, "x"))}),
      par(Prog::choice({incr(sp, "x"), Prog::skip()}), assign(sp, "x", add(v(sp, "y"), k(1)))),
  };
  for (const auto& p : progs)
    for (State s : sp.all_states()) {
      auto kr = kahn_eval(p, s);
      CHECK_FALSE(kr.truncated);
      CHECK(kr.states == sem_cmd(prog::compile(p, 6, 6).command, s));
    }
}

TEST_CASE("endpoint Kahn form agrees with the T(σ) definitions") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  std::mt19937 rng(9);
  for (int i = 0; i < 40; ++i) {
    auto p = random_desc(rng, sp, 3, 3, 4);
    for (State s : sp.all_states())
      for (State s2 : sp.all_states()) {
        const bool e = kahn_desc(p, s, s2);
        CHECK(e == kahn_desc_exists(sp, p, s, s2, 2));
        CHECK(e == kahn_desc_forall(sp, p, s, s2, 2));
      }
  }
}

TEST_CASE("Plotkin via actions agrees with the T(σ) definitions") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  auto a = trace::mk_atom_assign(sp, "x", add(v(sp, "x"), k(1)));
  auto b = trace::mk_atom_assign(sp, "x", k(0));
  OpSemConfig cfg{{a, b}};
  std::mt19937 rng(4);
  for (int i = 0; i < 30; ++i) {
    auto p2 = random_desc(rng, sp, 3, 2, 2);
    auto p = lang::unite(lang::concat(trace::atom_description(i % 2 ? a : b, 3), p2), random_desc(rng, sp, 3, 3, 2));
    if (i % 3 == 0) p = lang::unite(p, p2);
    for (State s : sp.all_states())
      for (State s2 : sp.all_states()) {
        const bool e = plotkin_desc(p, s, p2, s2, cfg);
        CHECK(e == plotkin_desc_exists(sp, p, s, p2, s2, cfg, 2));
        CHECK(e == plotkin_desc_forall(sp, p, s, p2, s2, cfg, 2));
      }
  }
}

TEST_CASE("canonical form") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  auto a = incr(sp, "x"), b = assign(sp, "x", k(0));
  CHECK(canonical(seq(Prog::skip(), a)) == a);
  CHECK(canonical(par(a, Prog::skip())) == a);
  CHECK(canonical(seq(seq(a, b), a)) == seq(a, seq(b, a)));
  CHECK(canonical(Prog::choice({b, a, b})) == canonical(Prog::choice({a, b})));
}
