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

#include "common.hpp"

#include <algorithm>
#include <limits>

#include "tracelang/error.hpp"

namespace tracelang::laws {

bool SuiteReport::passed() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawResult& r) { return r.ok(); });
}

const LawResult* SuiteReport::find(const std::string& law) const {
  for (const auto& r : laws)
    if (r.law == law) return &r;
  return nullptr;
}

std::size_t SuiteReport::min_premise_held() const {
  std::size_t m = std::numeric_limits<std::size_t>::max();
  for (const auto& r : laws)
    if (!r.refutation) m = std::min(m, r.premise_held);
  return m == std::numeric_limits<std::size_t>::max() ? 0 : m;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "calculus", "lemmas", "views", "deductive", "fixpoint"};
  return names;
}

SuiteReport run_suite(const std::string& name, const LawOptions& opts) {
  if (name == "algebra") return algebra_suite(opts);
  if (name == "calculus") return calculus_suite(opts);
  if (name == "lemmas") return lemma_suite(opts);
  if (name == "views") return views_suite(opts);
  if (name == "deductive") return deductive_suite(opts);
  if (name == "fixpoint") return fixpoint_suite(opts);
  throw Error("unknown suite '" + name + "'");
}

namespace detail {

trace::Description random_desc(Rng& rng, const trace::StateSpace& sp, std::size_t n, std::size_t max_len,
                               std::size_t count) {
  trace::Description d(n);
  const auto states = sp.all_states();
  max_len = std::min(max_len, n);
  for (std::size_t i = 0; i < count; ++i) {
    trace::Trace t;
    const std::size_t len = pick(rng, max_len + 1);
    trace::State cur = states[pick(rng, states.size())];
    for (std::size_t j = 0; j < len; ++j) {
      trace::State from = coin(rng, 25) ? states[pick(rng, states.size())] : cur;
      trace::State to = states[pick(rng, states.size())];
      t.push_back({from, to});
      cur = to;
    }
    d.insert(std::move(t));
  }
  return d;
}

prog::Command random_command(Rng& rng, const std::vector<trace::Atom>& atoms, std::size_t n, std::size_t max_words,
                             std::size_t max_len) {
  if (max_len == 0 || max_len > n) max_len = n;
  prog::Command c(n);
  const std::size_t count = 1 + pick(rng, max_words);
  for (std::size_t i = 0; i < count; ++i) {
    prog::AtomSeq as;
    const std::size_t len = pick(rng, max_len + 1);
    for (std::size_t j = 0; j < len; ++j) as.push_back(atoms[pick(rng, atoms.size())]);
    c.insert(std::move(as));
  }
  return c;
}

std::vector<Space> battery_spaces() {
  using trace::Expr;
  using Op = Expr::Op;
  auto k = [](long long c) { return Expr::constant(c); };
  auto bin = [](Op op, Expr a, Expr b) { return Expr::binary(op, std::move(a), std::move(b)); };
  std::vector<Space> out;
  {
    auto sp = trace::StateSpace::ranges({{"x", 0, 2}});
    auto x = Expr::variable(0, "x");
    out.push_back({"x:0..2",
                   sp,
                   {trace::mk_atom_assign(sp, "x", bin(Op::Add, x, k(1))), trace::mk_atom_assign(sp, "x", k(0)),
                    trace::mk_atom_assume(sp, bin(Op::Lt, x, k(2))),
                    trace::mk_atom_assign(sp, "x", bin(Op::Sub, k(2), x))}});
  }
  {
    auto sp = trace::StateSpace::ranges({{"x", 0, 1}, {"y", 0, 1}});
    auto x = Expr::variable(0, "x"), y = Expr::variable(1, "y");
    out.push_back({"x,y:0..1",
                   sp,
                   {trace::mk_atom_assign(sp, "x", bin(Op::Sub, k(1), x)), trace::mk_atom_assign(sp, "y", x),
                    trace::mk_atom_assume(sp, bin(Op::Eq, x, y)), trace::mk_atom_block(sp, {{"x", y}, {"y", x}}),
                    trace::mk_atom_assign(sp, "y", k(1))}});
  }
  {
    auto sp = trace::StateSpace::ranges({{"x", 0, 2}, {"y", 0, 2}});
    auto x = Expr::variable(0, "x"), y = Expr::variable(1, "y");
    out.push_back({"x,y:0..2",
                   sp,
                   {trace::mk_atom_assign(sp, "x", bin(Op::Add, x, k(1))), trace::mk_atom_assign(sp, "y", x),
                    trace::mk_atom_assume(sp, bin(Op::Lt, y, x)), trace::mk_atom_assign(sp, "x", y)}});
  }
  return out;
}

prog::Prog random_prog(Rng& rng, const std::vector<trace::Atom>& atoms, std::size_t depth) {
  using prog::Prog;
  if (depth == 0 || coin(rng, 30)) {
    if (coin(rng, 15)) return Prog::skip();
    return Prog::atom(atoms[pick(rng, atoms.size())]);
  }
  switch (pick(rng, 10)) {
    case 0:
    case 1:
    case 2:
    case 3:
      return Prog::seq(random_prog(rng, atoms, depth - 1), random_prog(rng, atoms, depth - 1));
    case 4:
    case 5:
      return Prog::choice({random_prog(rng, atoms, depth - 1), random_prog(rng, atoms, depth - 1)});
    case 6:
    case 7:
    case 8:
      return Prog::par(random_prog(rng, atoms, depth - 1), random_prog(rng, atoms, depth - 1));
    default:
      return Prog::star(random_prog(rng, atoms, 0));
  }
}

}  // namespace detail
}  // namespace tracelang::laws
