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

#ifndef TRACELANG_TESTS_FIXTURES_HPP
#define TRACELANG_TESTS_FIXTURES_HPP

#include <random>
#include <string>

#include "tracelang/prog.hpp"
#include "tracelang/trace.hpp"

namespace fx {

using namespace tracelang;
using trace::Expr;
using trace::StateSpace;
using prog::Prog;

inline Expr v(const StateSpace& sp, const std::string& n) { return Expr::variable(*sp.var_index(n), n); }
inline Expr k(long long c) { return Expr::constant(c); }
inline Expr add(Expr a, Expr b) { return Expr::binary(Expr::Op::Add, std::move(a), std::move(b)); }
inline Expr sub(Expr a, Expr b) { return Expr::binary(Expr::Op::Sub, std::move(a), std::move(b)); }
inline Expr lt(Expr a, Expr b) { return Expr::binary(Expr::Op::Lt, std::move(a), std::move(b)); }
inline Expr gt(Expr a, Expr b) { return Expr::binary(Expr::Op::Gt, std::move(a), std::move(b)); }
inline Expr eq(Expr a, Expr b) { return Expr::binary(Expr::Op::Eq, std::move(a), std::move(b)); }

inline Prog assign(const StateSpace& sp, const std::string& x, Expr e) {
  return Prog::atom(trace::mk_atom_assign(sp, x, e));
}
inline Prog assume(const StateSpace& sp, Expr c) { return Prog::atom(trace::mk_atom_assume(sp, c)); }
inline Prog incr(const StateSpace& sp, const std::string& x) { return assign(sp, x, add(v(sp, x), k(1))); }
inline Prog seq(Prog a, Prog b) { return Prog::seq(std::move(a), std::move(b)); }
inline Prog par(Prog a, Prog b) { return Prog::par(std::move(a), std::move(b)); }

inline trace::State st(const StateSpace& sp, std::vector<int> vals) { return *sp.state_of(vals); }

// t := x ; x := t + 1, twice in parallel with separate temporaries.
inline Prog racy_increment(const StateSpace& sp) {
  auto t1 = seq(assign(sp, "t1", v(sp, "x")), assign(sp, "x", add(v(sp, "t1"), k(1))));
  auto t2 = seq(assign(sp, "t2", v(sp, "x")), assign(sp, "x", add(v(sp, "t2"), k(1))));
  return par(t1, t2);
}

// rec X . (assume x > 0 ; x := x - 1 ; X) + assume x == 0
inline Prog countdown(const StateSpace& sp) {
  auto body = Prog::choice({seq(assume(sp, gt(v(sp, "x"), k(0))), seq(assign(sp, "x", sub(v(sp, "x"), k(1))), Prog::var("X"))),
                            assume(sp, eq(v(sp, "x"), k(0)))});
  return Prog::rec("X", body);
}

// Random description over the space: mostly consistent traces, sometimes a jump.
inline trace::Description random_desc(std::mt19937& rng, const StateSpace& sp, std::size_t n, std::size_t max_len,
                                      int count) {
  trace::Description d(n);
  auto states = sp.all_states();
  for (int i = 0; i < count; ++i) {
    trace::Trace t;
    const std::size_t len = rng() % (max_len + 1);
    trace::State cur = states[rng() % states.size()];
    for (std::size_t j = 0; j < len; ++j) {
      trace::State from = rng() % 4 == 0 ? states[rng() % states.size()] : cur;
      trace::State to = states[rng() % states.size()];
      t.push_back({from, to});
      cur = to;
    }
    d.insert(t);
  }
  return d;
}

inline prog::Command random_command(std::mt19937& rng, const std::vector<trace::Atom>& atoms, std::size_t n,
                                    int max_count = 4) {
  prog::Command c(n);
  const int count = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_count));
  for (int i = 0; i < count; ++i) {
    prog::AtomSeq as;
    const std::size_t len = rng() % (n + 1);
    for (std::size_t j = 0; j < len; ++j) as.push_back(atoms[rng() % atoms.size()]);
    c.insert(as);
  }
  return c;
}

}  // namespace fx

#endif  // TRACELANG_TESTS_FIXTURES_HPP
