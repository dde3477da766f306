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
#include <thread>

#include "doctest.h"
#include "tracelang/trace.hpp"

using namespace tracelang;
using namespace tracelang::trace;

namespace {

StateSpace x03() { return StateSpace::ranges({{"x", 0, 3}}); }

Expr var(const StateSpace& sp, const std::string& n) { return Expr::variable(*sp.var_index(n), n); }
Expr lit(long long v) { return Expr::constant(v); }
Expr bin(Expr::Op op, Expr a, Expr b) { return Expr::binary(op, std::move(a), std::move(b)); }

State st(const StateSpace& sp, std::vector<int> vals) { return *sp.state_of(vals); }

// Every trace over Σ×Σ of length 1..k, filtered by definition.
std::set<Trace> brute_T(const StateSpace& sp, State s, std::size_t k) {
  std::vector<Step> letters;
  for (State a : sp.all_states())
    for (State b : sp.all_states()) letters.push_back({a, b});
  std::set<Trace> out;
  std::vector<Trace> layer{Trace{}};
  for (std::size_t len = 1; len <= k; ++len) {
    std::vector<Trace> next;
    for (const auto& t : layer)
      for (const auto& l : letters) {
        auto u = t;
        u.push_back(l);
        next.push_back(u);
      }
    for (const auto& t : next) {
      bool ic = true;
      for (std::size_t i = 1; i < t.size(); ++i) ic = ic && t[i - 1].to == t[i].from;
      if (ic && t.back().to == s) out.insert(t);
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("state space") {
  auto sp = StateSpace::ranges({{"x", 0, 2}, {"y", 5, 6}});
  CHECK(sp.size() == 6);
  auto s = st(sp, {2, 5});
  CHECK(sp.value(s, 0) == 2);
  CHECK(sp.value(s, 1) == 5);
  CHECK(sp.format(s) == "x=2 y=5");
  CHECK_FALSE(sp.state_of(std::vector<int>{3, 5}).has_value());
  CHECK_FALSE(sp.with_value(s, 1, 7).has_value());
  CHECK(sp.with_value(s, 1, 6) == st(sp, {2, 6}));
  CHECK_THROWS_AS(StateSpace::ranges({{"x", 0, 1}, {"x", 0, 1}}), Error);
  CHECK_THROWS_AS(StateSpace::ranges({{"x", 1, 0}}), Error);
}

TEST_CASE("expressions") {
  auto sp = StateSpace::ranges({{"x", 0, 3}, {"y", 0, 3}});
  auto s = st(sp, {2, 0});
  CHECK(bin(Expr::Op::Add, var(sp, "x"), lit(1)).eval(sp, s) == 3);
  CHECK_FALSE(bin(Expr::Op::Div, var(sp, "x"), var(sp, "y")).eval(sp, s).has_value());
  auto guarded = bin(Expr::Op::And, bin(Expr::Op::Ne, var(sp, "y"), lit(0)),
                     bin(Expr::Op::Gt, bin(Expr::Op::Div, var(sp, "x"), var(sp, "y")), lit(0)));
  CHECK(guarded.eval(sp, s) == 0);
  CHECK(negate(bin(Expr::Op::Lt, var(sp, "x"), lit(3))).eval(sp, s) == 0);
}

TEST_CASE("is_consistent") {
  auto sp = x03();
  State s0 = st(sp, {0}), s1 = st(sp, {1}), s2 = st(sp, {2}), s3 = st(sp, {3});
  CHECK(is_consistent(Trace{}));
  CHECK(is_consistent(Trace{{s0, s1}, {s1, s2}}));
  CHECK_FALSE(is_consistent(Trace{{s0, s1}, {s2, s3}}));
}

TEST_CASE("ic_traces_ending_in matches the definition") {
  auto sp = StateSpace::ranges({{"b", 0, 1}});
  for (State s : sp.all_states()) {
    auto t1 = ic_traces_ending_in(sp, s, 1);
    CHECK(t1.size() == 2);
    auto t2 = ic_traces_ending_in(sp, s, 2);
    CHECK(std::set<Trace>(t2.begin(), t2.end()) == brute_T(sp, s, 2));
    // Two one-step traces plus four two-step chains (both inner states free).
    CHECK(t2.size() == 6);
    CHECK(t2.contains(Trace{{s, s}}));
  }
  auto sp3 = StateSpace::ranges({{"x", 0, 2}});
  for (State s : sp3.all_states()) {
    auto t = ic_traces_ending_in(sp3, s, 3);
    CHECK(std::set<Trace>(t.begin(), t.end()) == brute_T(sp3, s, 3));
    CHECK(t.size() == 3 + 9 + 27);
  }
}

TEST_CASE("T(σ) properties and gluing") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  for (State s : sp.all_states()) {
    auto t = ic_traces_ending_in(sp, s, 3);
    CHECK_FALSE(t.is_empty());
    for (const auto& tr : t) {
      CHECK(is_consistent(tr));
      CHECK(tr.back().to == s);
      if (tr.size() < 3) {
        for (State s2 : sp.all_states()) {
          auto glued = tr;
          glued.push_back({s, s2});
          CHECK(ic_traces_ending_in(sp, s2, 3).contains(glued));
        }
      }
    }
  }
}

TEST_CASE("inconsistent prefixes stay inconsistent") {
  auto sp = StateSpace::ranges({{"x", 0, 1}});
  State s0 = st(sp, {0}), s1 = st(sp, {1});
  CHECK(is_inconsistent_closed(sp, lang::skip<Step>(4)));
  auto inc = mk_atom_assign(sp, "x", bin(Expr::Op::Sub, lit(1), var(sp, "x")));
  CHECK(is_inconsistent_closed(sp, atom_description(inc, 4)));
  CHECK(is_inconsistent_closed(sp, Description(4, {Trace{{s0, s1}, {s1, s0}}})));
}

TEST_CASE("atoms") {
  auto sp = x03();
  State s0 = st(sp, {0}), s1 = st(sp, {1}), s2 = st(sp, {2}), s3 = st(sp, {3});
  auto a = intern_atom(sp, {{s0, s1}}, "a");
  CHECK(atom_apply(a, s0) == StateSet{s1});
  CHECK(atom_apply(a, s1).empty());
  CHECK(atom_apply_set(a, {s0, s1}) == StateSet{s1});

  auto inc = mk_atom_assign(sp, "x", bin(Expr::Op::Add, var(sp, "x"), lit(1)));
  CHECK(atom_apply(inc, s1) == StateSet{s2});
  CHECK(atom_apply(inc, s3).empty());
  auto pos = mk_atom_assume(sp, bin(Expr::Op::Gt, var(sp, "x"), lit(0)));
  CHECK(atom_apply(pos, s0).empty());
  CHECK(atom_apply(pos, s2) == StateSet{s2});
  CHECK_THROWS_AS(mk_atom_assign(sp, "z", lit(0)), ElaborationError);
}

TEST_CASE("atom_apply_set distributes over union") {
  auto sp = StateSpace::ranges({{"x", 0, 3}});
  std::mt19937 rng(1);
  auto states = sp.all_states();
  for (int i = 0; i < 30; ++i) {
    std::set<Step> rel;
    StateSet a, b;
    for (State x : states) {
      for (State y : states)
        if (rng() % 3 == 0) rel.insert({x, y});
      if (rng() % 2) a.insert(x);
      if (rng() % 2) b.insert(x);
    }
    auto at = intern_atom(sp, rel, "r");
    StateSet ab = a;
    ab.insert(b.begin(), b.end());
    auto lhs = atom_apply_set(at, ab);
    auto ra = atom_apply_set(at, a), rb = atom_apply_set(at, b);
    ra.insert(rb.begin(), rb.end());
    CHECK(lhs == ra);
  }
}

TEST_CASE("interning gives id equality iff relation equality") {
  auto sp = x03();
  auto e1 = bin(Expr::Op::Add, var(sp, "x"), lit(1));
  auto e2 = bin(Expr::Op::Sub, var(sp, "x"), lit(-1));
  auto a = mk_atom_assign(sp, "x", e1);
  auto b = mk_atom_assign(sp, "x", e2);
  CHECK(a == b);
  CHECK(a.label() == "x := x + 1");
  auto c = mk_atom_assign(sp, "x", lit(0));
  CHECK(a != c);
  // Same relation over a differently named space is a different letter.
  auto other = StateSpace::ranges({{"y", 0, 3}});
  auto d = mk_atom_assign(other, "y", bin(Expr::Op::Add, var(other, "y"), lit(1)));
  CHECK(d != a);
}

TEST_CASE("concurrent interning agrees") {
  auto sp = StateSpace::ranges({{"x", 0, 7}});
  std::vector<std::uint64_t> ids(8);
  std::vector<std::thread> ts;
  for (int i = 0; i < 8; ++i)
    ts.emplace_back([&, i] {
      ids[i] = mk_atom_assign(sp, "x", bin(Expr::Op::Mul, var(sp, "x"), lit(2))).id();
    });
  for (auto& t : ts) t.join();
  for (auto id : ids) CHECK(id == ids[0]);
}

TEST_CASE("footprint") {
  auto sp = StateSpace::ranges({{"x", 0, 2}, {"y", 0, 2}, {"z", 0, 1}});
  auto a = mk_atom_assign(sp, "x", bin(Expr::Op::Add, var(sp, "y"), lit(1)));
  CHECK(footprint(sp, a) == std::vector<std::size_t>{0, 1});
  auto g = mk_atom_assume(sp, bin(Expr::Op::Eq, var(sp, "z"), lit(0)));
  CHECK(footprint(sp, g) == std::vector<std::size_t>{2});
  auto block = mk_atom_block(sp, {{"x", lit(1)}, {"y", var(sp, "x")}});
  CHECK(block.label() == "atomic { x := 1, y := x }");
  CHECK(atom_apply(block, st(sp, {0, 0, 0})) == StateSet{st(sp, {1, 1, 0})});
}
