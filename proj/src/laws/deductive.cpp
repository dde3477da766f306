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

#include <algorithm>

#include "common.hpp"
#include "tracelang/views.hpp"

namespace tracelang::laws {

namespace {

using namespace detail;
using prog::Command;
using trace::Description;
using views::Verdict;
using views::View;
using views::ViewStructure;

View random_view(Rng& rng, const ViewStructure& vs, unsigned percent = 30) {
  View v = vs.bottom();
  for (std::size_t i = 0; i < vs.basis_size(); ++i)
    if (coin(rng, percent)) v.set(i);
  return v;
}

View random_subview(Rng& rng, const View& v, unsigned percent = 70) {
  View out(v.size());
  v.for_each([&](std::size_t i) {
    if (coin(rng, percent)) out.set(i);
  });
  return out;
}

// Weakest preview of a judgement that is closed under ⊆ and joins in the
// pre position: the join of the basis elements that satisfy it alone.
template <typename J>
View weakest(const ViewStructure& vs, J&& holds) {
  View out = vs.bottom();
  for (std::size_t i = 0; i < vs.basis_size(); ++i)
    if (holds(vs.element(i))) out.set(i);
  return out;
}

// The greatest v ⊆ start with J(v, P, v), by iterating v ↦ v ∩ wp(v).
template <typename Wp>
View invariant_below(View v, Wp&& wp) {
  for (;;) {
    View next = v & wp(v);
    if (next == v) return v;
    v = std::move(next);
  }
}

std::vector<trace::Atom> deductive_atoms(const trace::StateSpace& sp) {
  using trace::Expr;
  using Op = Expr::Op;
  auto x = Expr::variable(0, "x"), y = Expr::variable(1, "y");
  auto k = [](long long c) { return Expr::constant(c); };
  auto bin = [](Op op, Expr a, Expr b) { return Expr::binary(op, std::move(a), std::move(b)); };
  return {trace::mk_atom_assign(sp, "x", bin(Op::Sub, k(1), x)), trace::mk_atom_assign(sp, "x", k(0)),
          trace::mk_atom_assume(sp, bin(Op::Eq, x, k(1))),    trace::mk_atom_assign(sp, "y", bin(Op::Sub, k(1), y)),
          trace::mk_atom_assign(sp, "y", k(1)),               trace::mk_atom_assume(sp, bin(Op::Eq, y, k(0))),
          trace::mk_atom_assign(sp, "y", x)};
}

}  // namespace

SuiteReport views_suite(const LawOptions& opts) {
  Stopwatch clock;
  SuiteReport rep;
  rep.suite = "views";
  auto sp = trace::StateSpace::ranges({{"x", 0, 2}});
  auto inc = trace::mk_atom_assign(sp, "x", trace::Expr::binary(trace::Expr::Op::Add, trace::Expr::variable(0, "x"),
                                                                trace::Expr::constant(1)));
  auto reset = trace::mk_atom_assign(sp, "x", trace::Expr::constant(0));
  for (auto vs : {ViewStructure::powerset(sp), ViewStructure::separation(sp)}) {
    views::add_generated_axioms(vs, {inc, reset});
    const auto report = views::check_structure(vs, opts.seed, 200, 64);
    for (const auto& p : report.properties) {
      LawResult r;
      r.suite = rep.suite;
      r.law = vs.name() + ": " + p.name;
      r.instances = r.premise_held = p.instances;
      r.violations = p.passed ? 0 : 1;
      r.exhaustive = p.exhaustive;
      r.counterexample = p.counterexample;
      rep.laws.push_back(r);
    }
  }
  // The deliberately unsound axiom: incrementing x owning nothing.
  {
    LawResult r;
    r.suite = rep.suite;
    r.law = "unsound axiom is rejected with a frame";
    r.refutation = true;
    auto vs = ViewStructure::separation(sp);
    const views::Axiom bad{vs.unit(), inc, vs.unit()};
    r.instances = 1;
    if (auto why = views::axiom_counterexample(vs, bad)) {
      vs.add_axiom(bad);
      const auto report = views::check_structure(vs, opts.seed, 50, 64);
      const auto* sound = report.find("axioms are sound");
      if (sound && !sound->passed) r.counterexample = *why;
    }
    rep.laws.push_back(r);
  }
  rep.seconds = clock.seconds();
  return rep;
}

SuiteReport deductive_suite(const LawOptions& opts) {
  Stopwatch clock;
  SuiteReport rep;
  rep.suite = "deductive";
  Rng rng(opts.seed + 303);
  const std::size_t m = opts.deductive_instances;
  const auto sp = trace::StateSpace::ranges({{"x", 0, 1}, {"y", 0, 1}});
  const auto atoms = deductive_atoms(sp);
  auto vs = ViewStructure::separation(sp);
  views::add_generated_axioms(vs, atoms);
  const std::size_t dn = 2, cn = 3;
  const std::vector<trace::Atom> x_atoms(atoms.begin(), atoms.begin() + 3), y_atoms(atoms.begin() + 3, atoms.end());

  auto desc = [&] {
    return coin(rng, 70) ? prog::denote(random_command(rng, atoms, dn, 3)) : random_desc(rng, sp, dn, dn, 3);
  };
  auto cmd = [&] { return random_command(rng, atoms, cn, 3); };
  auto fmt = [&](const View& v) { return vs.format(v); };
  auto law = [&](const std::string& name, const std::function<void(LawResult&)>& one) {
    rep.laws.push_back(repeat(rep.suite, name, m, one));
  };

  auto bt = [&](const View& v, const Description& p, const View& v2) { return views::btriple(vs, v, p, v2); };
  auto ft = [&](const View& v, const Description& p, const View& v2) { return views::ftriple(vs, v, p, v2); };
  auto vt = [&](const View& v, const Command& c, const View& v2) {
    return views::vtriple(vs, v, c, v2).verdict == Verdict::holds;
  };
  auto wp_b = [&](const Description& p, const View& post) {
    return weakest(vs, [&](const View& b) { return bt(b, p, post); });
  };
  auto wp_f = [&](const Description& p, const View& post) {
    return weakest(vs, [&](const View& b) { return ft(b, p, post); });
  };
  auto wp_v = [&](const Command& c, const View& post) {
    return weakest(vs, [&](const View& b) { return vt(b, c, post); });
  };
  const auto& axioms = vs.axioms();

  // The three calculi share their rule shapes; J is the judgement, Wp its
  // weakest preview, G draws a program, Star and Union build programs.
  auto family = [&](const std::string& tag, auto j, auto wp, auto draw, auto star, auto unite, auto skip,
                    auto atom_prog) {
    law(tag + "atom", [&](LawResult& r) {
      const auto& ax = axioms[pick(rng, axioms.size())];
      record(r, true, j(ax.pre, atom_prog(ax.atom), ax.post), [&] { return fmt(ax.pre) + " " + ax.atom.label(); });
    });
    law(tag + "skip", [&](LawResult& r) {
      auto v = random_view(rng, vs);
      record(r, true, j(v, skip(), v), [&] { return fmt(v); });
    });
    law(tag + "seq", [&](LawResult& r) {
      auto p = draw(), p2 = draw();
      auto v3 = random_view(rng, vs);
      auto v2 = random_subview(rng, wp(p2, v3));
      auto v1 = random_subview(rng, wp(p, v2));
      record(r, v1.any() && j(v1, p, v2) && j(v2, p2, v3), j(v1, lang::concat(p, p2), v3),
             [&] { return fmt(v1) + " / " + fmt(v2) + " / " + fmt(v3); });
    });
    law(tag + "choice", [&](LawResult& r) {
      std::vector<decltype(draw())> xs{draw(), draw()};
      if (coin(rng)) xs.push_back(draw());
      auto v2 = random_view(rng, vs, 50);
      View v = vs.top();
      for (const auto& p : xs) v &= wp(p, v2);
      v = random_subview(rng, v, 85);
      bool pre = true;
      for (const auto& p : xs) pre = pre && j(v, p, v2);
      record(r, v.any() && pre, j(v, unite(xs), v2), [&] { return fmt(v) + " to " + fmt(v2); });
    });
    law(tag + "iter", [&](LawResult& r) {
      auto p = draw();
      auto v = invariant_below(random_view(rng, vs, 60), [&](const View& w) { return wp(p, w); });
      record(r, v.any() && j(v, p, v), j(v, star(p), v), [&] { return fmt(v); });
    });
    law(tag + "cons", [&](LawResult& r) {
      auto p = draw();
      auto v2 = random_view(rng, vs);
      auto v1 = random_subview(rng, wp(p, v2), 85);
      auto v = random_subview(rng, v1);
      auto v3 = v2 | random_view(rng, vs, 20);
      record(r, v.any() && vs.preceq(v, v1) && j(v1, p, v2) && vs.preceq(v2, v3), j(v, p, v3),
             [&] { return fmt(v) + " <= " + fmt(v1) + ", " + fmt(v2) + " <= " + fmt(v3); });
    });
    law(tag + "disj", [&](LawResult& r) {
      auto p = draw();
      auto v2 = random_view(rng, vs);
      const auto w = wp(p, v2);
      std::vector<View> parts{random_subview(rng, w), random_subview(rng, w)};
      if (coin(rng)) parts.push_back(random_view(rng, vs, 15));
      bool pre = true;
      for (const auto& v : parts) pre = pre && j(v, p, v2);
      const auto joined = vs.join(parts);
      record(r, joined.any() && pre, j(joined, p, v2), [&] { return fmt(joined) + " to " + fmt(v2); });
    });
  };

  auto big_union = [](auto n) {
    return [n](const auto& xs) { return lang::big_union(xs, n); };
  };
  family("B", bt, wp_b, desc, [](const Description& p) { return lang::star(p); }, big_union(dn),
         [&] { return lang::skip<trace::Step>(dn); }, [&](const trace::Atom& a) { return trace::atom_description(a, dn); });
  law("erasure is a join-homomorphism", [&](LawResult& r) {
    auto a = random_view(rng, vs), b = random_view(rng, vs);
    auto ea = vs.erase(a), eb = vs.erase(b);
    ea.insert(eb.begin(), eb.end());
    record(r, true, vs.erase(vs.join(a, b)) == ea, [&] { return fmt(a) + " and " + fmt(b); });
  });
  family("F", ft, wp_f, desc, [](const Description& p) { return lang::star(p); }, big_union(dn),
         [&] { return lang::skip<trace::Step>(dn); }, [&](const trace::Atom& a) { return trace::atom_description(a, dn); });
  law("Fframe", [&](LawResult& r) {
    auto p = desc();
    auto v2 = random_view(rng, vs);
    auto v = random_subview(rng, wp_f(p, v2), 85);
    auto f = random_view(rng, vs, 20);
    record(r, vs.compose(v, f).any() && ft(v, p, v2), ft(vs.compose(v, f), p, vs.compose(v2, f)),
           [&] { return fmt(v) + " * " + fmt(f) + " to " + fmt(v2); });
  });
  family("V", vt, wp_v, cmd, [](const Command& c) { return lang::star(c); }, big_union(cn),
         [&] { return lang::skip<trace::Atom>(cn); }, [&](const trace::Atom& a) { return lang::singleton<trace::Atom>(cn, {a}); });
  law("Vframe", [&](LawResult& r) {
    auto c = cmd();
    auto v2 = random_view(rng, vs);
    auto v = random_subview(rng, wp_v(c, v2), 85);
    auto f = random_view(rng, vs, 20);
    record(r, vs.compose(v, f).any() && vt(v, c, v2), vt(vs.compose(v, f), c, vs.compose(v2, f)),
           [&] { return fmt(v) + " * " + fmt(f) + " to " + fmt(v2) + " over " + prog::format_command(c); });
  });
  // Threads favour atoms over their own variable, so that ∗ of the views is
  // mostly defined.
  auto side = [&](const std::vector<trace::Atom>& own) {
    std::vector<trace::Atom> pool = own;
    pool.insert(pool.end(), own.begin(), own.end());
    pool.push_back(atoms.back());
    return random_command(rng, pool, 2, 2);
  };
  law("Vconc", [&](LawResult& r) {
    auto c1 = side(x_atoms), c2 = side(y_atoms);
    auto p1 = random_view(rng, vs, 40), p2 = random_view(rng, vs, 40);
    auto v1 = random_subview(rng, wp_v(c1, p1), 85), v2 = random_subview(rng, wp_v(c2, p2), 85);
    auto c = lang::shuffle(c1.with_bound(4), c2.with_bound(4));
    const bool concl = views::vtriple(vs, vs.compose(v1, v2), c, vs.compose(p1, p2)).verdict == Verdict::holds;
    record(r, vs.compose(v1, v2).any() && vt(v1, c1, p1) && vt(v2, c2, p2), concl, [&] {
      return fmt(v1) + " * " + fmt(v2) + " over " + prog::format_command(c1) + " || " + prog::format_command(c2);
    });
  });

  law("framing triple implies basic triple", [&](LawResult& r) {
    auto p = desc();
    auto v2 = random_view(rng, vs);
    auto v = coin(rng) ? random_subview(rng, wp_f(p, v2)) : random_view(rng, vs);
    record(r, v.any() && ft(v, p, v2), bt(v, p, v2), [&] { return fmt(v) + " to " + fmt(v2); });
  });
  law("full triple implies framing triple", [&](LawResult& r) {
    auto c = cmd();
    auto v2 = random_view(rng, vs);
    auto v = coin(rng, 75) ? random_subview(rng, wp_v(c, v2)) : random_view(rng, vs);
    record(r, v.any() && vt(v, c, v2), ft(v, prog::denote(c), v2), [&] { return fmt(v) + " over " + prog::format_command(c); });
  });
  law("atom-sequence triple implies framing triple", [&](LawResult& r) {
    auto c = random_command(rng, atoms, cn, 1);
    const auto& as = *c.begin();
    auto v2 = random_view(rng, vs);
    auto v = random_subview(rng, views::astriple_pre(vs, as, v2), 85);
    record(r, v.any() && views::astriple(vs, v, as, v2).verdict == Verdict::holds,
           ft(v, prog::traces_of_atom_seq(as, cn), v2), [&] { return fmt(v) + " over " + prog::format_atom_seq(as); });
  });

  rep.seconds = clock.seconds();
  return rep;
}

}  // namespace tracelang::laws
