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
#include "tracelang/fixpoint.hpp"
#include "tracelang/opsem.hpp"
#include "tracelang/recursion.hpp"
#include "tracelang/views.hpp"

namespace tracelang::laws {

namespace {

using namespace detail;
using L = lang::BoundedLang<char>;
using F = fixpoint::FnExpr<char>;

const char* const kSuite = "fixpoint";

// λx. skip ∪ (P ; x)
fixpoint::MonotoneFn<char> star_fn(const L& p) {
  return {"x", F::unite(F::constant(lang::skip<char>(p.bound())), F::concat(F::constant(p), F::var("x")))};
}

// rec X . (assume x > 0 ; x := x - 1 ; X) + assume x == 0
prog::Prog countdown(const trace::StateSpace& sp) {
  using prog::Prog;
  using trace::Expr;
  using Op = Expr::Op;
  auto x = Expr::variable(0, "x");
  auto zero = Expr::constant(0);
  auto dec = trace::mk_atom_assign(sp, "x", Expr::binary(Op::Sub, x, Expr::constant(1)));
  auto body = Prog::choice(
      {Prog::seq(Prog::atom(trace::mk_atom_assume(sp, Expr::binary(Op::Gt, x, zero))),
                 Prog::seq(Prog::atom(dec), Prog::var("X"))),
       Prog::atom(trace::mk_atom_assume(sp, Expr::binary(Op::Eq, x, zero)))});
  return Prog::rec("X", body);
}

}  // namespace

SuiteReport fixpoint_suite(const LawOptions& opts) {
  Stopwatch clock;
  SuiteReport rep;
  rep.suite = kSuite;
  Rng rng(opts.seed + 404);
  const std::vector<char> ab{'a', 'b'};

  {
    LawResult r;
    r.suite = kSuite;
    r.law = "P* = lfp (x -> skip + P;x) at every bound <= 6";
    for (std::size_t n = 0; n <= 6; ++n)
      for (std::size_t i = 0; i < opts.fixpoint_samples; ++i) {
        auto p = random_lang(rng, ab, n, 4);
        auto fix = fixpoint::lfp_bounded(star_fn(p), n, 64);
        record(r, true, fix.converged && lang::eq(fix.value, lang::star(p)),
               [&] { return "P = " + char_lang(p) + " at bound " + std::to_string(n); });
      }
    rep.laws.push_back(r);
  }
  {
    LawResult fixed, least;
    fixed.suite = least.suite = kSuite;
    fixed.law = "lfp f is a fixpoint";
    least.law = "lfp f is below every prefixpoint";
    const std::size_t n = 4;
    for (std::size_t i = 0; i < opts.fixpoint_samples; ++i) {
      auto c = random_lang(rng, ab, n, 3), p = random_lang(rng, ab, n, 3);
      fixpoint::MonotoneFn<char> f{"x", coin(rng) ? F::unite(F::constant(c), F::shuffle(F::constant(p), F::var("x")))
                                                  : F::unite(F::constant(c), F::concat(F::var("x"), F::constant(p)))};
      auto fix = fixpoint::lfp_bounded(f, n, 64);
      record(fixed, true, fix.converged && lang::eq(f(fix.value), fix.value),
             [&] { return "C = " + char_lang(c) + ", P = " + char_lang(p); });
      for (int j = 0; j < 10; ++j) {
        auto q = coin(rng) ? lang::unite(random_lang(rng, ab, n, 12), fix.value) : random_lang(rng, ab, n, 20);
        if (j == 0) q = lang::top(ab, n);
        record(least, lang::leq(f(q), q), lang::leq(fix.value, q), [&] { return "Q = " + char_lang(q); });
      }
    }
    rep.laws.push_back(fixed);
    rep.laws.push_back(least);
  }

  // The recursion rules on the countdown over x:0..3, separation views.
  {
    auto sp = trace::StateSpace::ranges({{"x", 0, 3}});
    auto vs = views::ViewStructure::separation(sp);
    const auto cd = countdown(sp);
    views::View any = vs.bottom();
    for (int x = 0; x <= 3; ++x) any |= vs.element(*vs.store_element({{0, x}}));
    const auto zero = vs.element(*vs.store_element({{0, 0}}));
    const std::size_t n = 6;
    // Hoare post: the atom sequences that can only end in x = 0.
    prog::Command hr(n);
    for (const auto& w : lang::top(prog::atoms_of(cd), n)) {
      bool ok = true;
      for (auto s : sp.all_states())
        for (auto t : opsem::sem_cmd(prog::Command(n, {w}), s)) ok = ok && sp.value(t, 0) == 0;
      if (ok) hr.insert(w);
    }
    recursion::RecursionOptions ro;
    ro.word_bound = n;
    ro.seed = opts.seed;
    for (const auto& c : recursion::check_recursion_rules(vs, cd, any, zero, lang::skip<trace::Atom>(n), hr, ro)) {
      LawResult r;
      r.suite = kSuite;
      r.law = c.rule + " on the countdown";
      r.instances = c.instances;
      r.premise_held = c.premise_held;
      r.violations = c.violations + (c.premise_held == 0 ? 1 : 0);
      r.counterexample = c.premise_held == 0 && c.counterexample.empty() ? "premise never held" : c.counterexample;
      rep.laws.push_back(r);
    }
  }

  rep.seconds = clock.seconds();
  return rep;
}

}  // namespace tracelang::laws
