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
#include "tracelang/views.hpp"

using namespace tracelang;
using namespace fx;
using namespace tracelang::views;
using trace::Step;

namespace {

View store(const ViewStructure& vs, std::vector<std::pair<std::string, int>> kv) {
  std::vector<std::pair<std::size_t, int>> s;
  for (auto& [n, x] : kv) s.push_back({*vs.space().var_index(n), x});
  return vs.element(*vs.store_element(s));
}

// x ∈ vals, as a disjunction of single-variable stores.
View owns(const ViewStructure& vs, const std::string& var, std::vector<int> vals) {
  View out = vs.bottom();
  for (int x : vals) out |= store(vs, {{var, x}});
  return out;
}

View random_view(std::mt19937& rng, const ViewStructure& vs) {
  View v = vs.bottom();
  const unsigned density = 1 + rng() % 4;
  for (std::size_t i = 0; i < vs.basis_size(); ++i)
    if (rng() % 8 < density) v.set(i);
  return v;
}

// Every consistent trace of length 1..k that ends in a state of `ends`.
std::vector<trace::Trace> brute_T(const StateSpace& sp, const StateSet& ends, std::size_t k) {
  std::vector<trace::Trace> out, layer;
  for (State a : sp.all_states())
    for (State b : sp.all_states()) layer.push_back({{a, b}});
  for (std::size_t len = 1; len <= k; ++len) {
    for (const auto& t : layer)
      if (ends.count(t.back().to)) out.push_back(t);
    if (len == k) break;
    std::vector<trace::Trace> next;
    for (const auto& t : layer)
      for (State b : sp.all_states()) {
        auto u = t;
        u.push_back({t.back().to, b});
        next.push_back(u);
      }
    layer = std::move(next);
  }
  return out;
}

// ⟨T(v) ∪ Inconsistent⟩ ; P ⊆ ⟨T(v′) ∪ Inconsistent⟩, with T(v) cut at k.
bool literal_btriple(const ViewStructure& vs, const View& v, const Description& p, const View& v2, std::size_t k) {
  const auto post = vs.erase(v2);
  for (const auto& t : brute_T(vs.space(), vs.erase(v), k))
    for (const auto& u : p) {
      auto tu = t;
      tu.insert(tu.end(), u.begin(), u.end());
      if (!trace::is_consistent(tu)) continue;
      if (!post.count(tu.back().to)) return false;
    }
  return true;
}

Derivation node(std::string rule, View pre, View post, std::vector<Derivation> premises = {}) {
  return {std::move(rule), std::move(pre), std::move(post), std::nullopt, std::move(premises)};
}

// {⋁ pres} a {post}: split into axiom instances, each weakened to post.
Derivation atom_derivation(const ViewStructure& vs, const Atom& a, const View& pre, const View& post) {
  std::vector<Derivation> parts;
  for (const auto& ax : vs.axioms()) {
    if (!(ax.atom == a) || ax.pre.count() != 1 || !ax.pre.subset_of(pre)) continue;
    parts.push_back(node("Vcons", ax.pre, post, {node("Vatom", ax.pre, ax.post)}));
  }
  return node("Vdisj", pre, post, std::move(parts));
}

}  // namespace

TEST_CASE("powerset instantiation basics") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  auto vs = ViewStructure::powerset(sp);
  CHECK(vs.basis_size() == 3);
  std::mt19937 rng(1);
  for (int i = 0; i < 20; ++i) {
    auto a = random_view(rng, vs), b = random_view(rng, vs);
    CHECK(vs.compose(a, vs.unit()) == a);
    CHECK(vs.compose(a, b) == (a & b));
    auto ej = vs.erase(vs.join(a, b));
    auto ea = vs.erase(a), eb = vs.erase(b);
    ea.insert(eb.begin(), eb.end());
    CHECK(ej == ea);
  }
  CHECK(vs.format(vs.bottom()) == "false");
  CHECK(vs.format(vs.from_states({st(sp, {0}), st(sp, {2})})) == "x == 0 or x == 2");
  CHECK_THROWS_AS(ViewStructure::powerset(StateSpace::ranges({{"x", 0, 9}}), 8), CapExceeded);
}

TEST_CASE("powerset axioms only for stuttering atoms") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  auto vs = ViewStructure::powerset(sp);
  auto inc = trace::mk_atom_assign(sp, "x", add(v(sp, "x"), k(1)));
  auto grd = trace::mk_atom_assume(sp, lt(v(sp, "x"), k(2)));
  // x := x + 1 only stutters where it is undefined.
  auto ai = generate_axioms(vs, inc);
  REQUIRE(ai.size() == 1);
  CHECK(ai[0].pre == vs.from_states({st(sp, {2})}));
  CHECK(ai[0].post.none());
  CHECK(generate_axioms(vs, grd).size() == 3);
  for (State s : sp.all_states()) {
    Axiom ax{vs.element(s.index), inc, vs.from_states(trace::atom_apply(inc, s))};
    CHECK(axiom_counterexample(vs, ax).has_value() == !trace::atom_apply(inc, s).empty());
  }
}

TEST_CASE("separation instantiation basics") {
  auto sp = StateSpace::ranges({{"x", 0, 2}, {"y", 0, 1}});
  auto vs = ViewStructure::separation(sp);
  CHECK(vs.basis_size() == 4 * 3);
  auto x0 = store(vs, {{"x", 0}}), x1 = store(vs, {{"x", 1}}), y1 = store(vs, {{"y", 1}});
  CHECK(vs.compose(x0, x1).none());
  CHECK(vs.compose(x0, y1) == store(vs, {{"x", 0}, {"y", 1}}));
  CHECK(vs.erase(vs.unit()) == sp.all_state_set());
  CHECK(vs.erase(vs.compose(x0, y1)) == StateSet{st(sp, {0, 1})});
  CHECK(vs.erase(vs.bottom()).empty());
  CHECK(vs.compose(vs.bottom(), x0).none());
  CHECK(vs.format(vs.join(x0, vs.compose(x1, y1))) == "x = 0 or x = 1 * y = 1");
  CHECK(vs.store_of(*vs.store_element({{0, 2}, {1, 0}})) == std::vector<std::pair<std::size_t, int>>{{0, 2}, {1, 0}});
  CHECK_FALSE(vs.store_element({{0, 5}}).has_value());

  auto inc = trace::mk_atom_assign(sp, "x", add(v(sp, "x"), k(1)));
  Axiom ax{store(vs, {{"x", 1}}), inc, store(vs, {{"x", 2}})};
  CHECK_FALSE(axiom_counterexample(vs, ax).has_value());
  auto gen = generate_axioms(vs, inc);
  CHECK(gen.size() == 3);
  for (const auto& g : gen) CHECK_FALSE(axiom_counterexample(vs, g).has_value());
}

TEST_CASE("both instantiations pass the interface checks exhaustively") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  std::vector<Atom> atoms{trace::mk_atom_assign(sp, "x", add(v(sp, "x"), k(1))),
                          trace::mk_atom_assume(sp, gt(v(sp, "x"), k(0))), trace::mk_atom_assign(sp, "x", k(0))};
  for (auto vs : {ViewStructure::powerset(sp), ViewStructure::separation(sp)}) {
    add_generated_axioms(vs, atoms);
    auto rep = check_structure(vs);
    for (const auto& p : rep.properties) {
      INFO(vs.name() << ": " << p.name << " " << p.counterexample);
      CHECK(p.passed);
      CHECK(p.exhaustive);
      CHECK(p.instances > 0);
    }
  }
}

TEST_CASE("sampled interface checks on a larger carrier") {
  auto sp = StateSpace::ranges({{"x", 0, 1}, {"y", 0, 1}});
  auto vs = ViewStructure::separation(sp);
  add_generated_axioms(vs, {trace::mk_atom_assign(sp, "x", v(sp, "y"))});
  auto rep = check_structure(vs, 7, 60);
  CHECK(rep.all_passed());
  CHECK_FALSE(rep.find("compose is associative")->exhaustive);
}

TEST_CASE("unsound axiom is rejected with a frame") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  auto vs = ViewStructure::separation(sp);
  auto inc = trace::mk_atom_assign(sp, "x", add(v(sp, "x"), k(1)));
  vs.add_axiom({vs.unit(), inc, vs.unit()});
  auto rep = check_structure(vs);
  auto* p = rep.find("axioms are sound");
  REQUIRE(p);
  CHECK_FALSE(p->passed);
  CHECK(p->counterexample.find("under frame {x = 0}") != std::string::npos);
  CHECK_FALSE(axiom_sound_full(vs, vs.axioms()[0]));
}

TEST_CASE("preceq is a separate field") {
  auto sp = StateSpace::ranges({{"x", 0, 1}});
  auto vs = ViewStructure::powerset(sp);
  // Comparing erasures only: still a preorder containing ⊆.
  vs.set_preceq([&](const View& a, const View& b) { return vs.erase_bits(a).subset_of(vs.erase_bits(b)); });
  CHECK(check_structure(vs).all_passed());
  // A preorder that misses ⊆ is caught.
  vs.set_preceq([](const View& a, const View& b) { return a == b; });
  auto rep = check_structure(vs);
  CHECK_FALSE(rep.find("entails-closure")->passed);
}

TEST_CASE("btriple examples") {
  auto sp = StateSpace::ranges({{"x", 0, 1}});
  auto vs = ViewStructure::powerset(sp);
  auto s0 = st(sp, {0}), s1 = st(sp, {1});
  auto a = trace::intern_atom(sp, {Step{s0, s1}}, "a");
  auto d = trace::atom_description(a, 2);
  auto v0 = vs.from_states({s0}), v1 = vs.from_states({s1});
  CHECK(btriple(vs, v0, d, v1));
  CHECK_FALSE(btriple(vs, v0, d, v0));
  CHECK(btriple(vs, v0, lang::skip<Step>(2), v0));
  CHECK(btriple_atom(vs, v0, a, v1));
}

TEST_CASE("atom triples and the endpoint reduction against the literal definition") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  std::mt19937 rng(5);
  auto atoms = std::vector<Atom>{trace::mk_atom_assign(sp, "x", add(v(sp, "x"), k(1))),
                                 trace::mk_atom_assume(sp, lt(v(sp, "x"), k(2))),
                                 trace::mk_atom_assign(sp, "x", k(0))};
  for (auto vs : {ViewStructure::powerset(sp), ViewStructure::separation(sp)}) {
    for (int i = 0; i < 60; ++i) {
      auto pre = random_view(rng, vs), post = random_view(rng, vs);
      const auto& a = atoms[i % atoms.size()];
      const auto img = trace::atom_apply_set(a, vs.erase(pre)), ep = vs.erase(post);
      CHECK(btriple(vs, pre, trace::atom_description(a, 3), post) ==
            std::includes(ep.begin(), ep.end(), img.begin(), img.end()));
      CHECK(btriple(vs, pre, trace::atom_description(a, 3), post) == btriple_atom(vs, pre, a, post));
      auto p = random_desc(rng, sp, 3, 3, 3);
      for (std::size_t kk = 1; kk <= 3; ++kk) CHECK(btriple(vs, pre, p, post) == literal_btriple(vs, pre, p, post, kk));
    }
  }
}

TEST_CASE("erasure order matches T-set order") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  auto vs = ViewStructure::separation(sp);
  for (const auto& a : vs.all_views())
    for (const auto& b : vs.all_views()) {
      auto ta = brute_T(sp, vs.erase(a), 2), tb = brute_T(sp, vs.erase(b), 2);
      std::set<trace::Trace> sa(ta.begin(), ta.end()), sb(tb.begin(), tb.end());
      const auto ea = vs.erase(a), eb = vs.erase(b);
      const bool erased = std::includes(eb.begin(), eb.end(), ea.begin(), ea.end());
      CHECK(erased == std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()));
    }
}

TEST_CASE("ftriple: separation frames away what powerset cannot") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  auto inc = trace::mk_atom_assign(sp, "x", add(v(sp, "x"), k(1)));
  auto d = trace::atom_description(inc, 2);
  auto sep = ViewStructure::separation(sp);
  CHECK(ftriple(sep, store(sep, {{"x", 0}}), d, store(sep, {{"x", 1}})));
  CHECK(ftriple_full(sep, store(sep, {{"x", 0}}), d, store(sep, {{"x", 1}})));
  auto pw = ViewStructure::powerset(sp);
  auto v0 = pw.from_states({st(sp, {0})}), v1 = pw.from_states({st(sp, {1})});
  CHECK(btriple(pw, v0, d, v1));
  CHECK_FALSE(ftriple(pw, v0, d, v1));
  CHECK_FALSE(ftriple_full(pw, v0, d, v1));
  CHECK(ftriple(sep, sep.unit(), lang::skip<Step>(2), sep.unit()));
}

TEST_CASE("ftriple: frame reduction and ftriple implies btriple") {
  auto sp = StateSpace::ranges({{"x", 0, 2}});
  std::mt19937 rng(11);
  for (auto vs : {ViewStructure::powerset(sp), ViewStructure::separation(sp)})
    for (int i = 0; i < 80; ++i) {
      auto pre = random_view(rng, vs), post = random_view(rng, vs);
      auto p = random_desc(rng, sp, 2, 2, 3);
      const bool f = ftriple(vs, pre, p, post);
      CHECK(f == ftriple_full(vs, pre, p, post));
      if (f) CHECK(btriple(vs, pre, p, post));
    }
}

TEST_CASE("astriple and vtriple examples") {
  auto sp = StateSpace::ranges({{"x", 0, 1}, {"y", 0, 1}});
  auto vs = ViewStructure::separation(sp);
  auto ix = incr(sp, "x"), iy = incr(sp, "y");
  auto pre = store(vs, {{"x", 0}, {"y", 0}}), post = store(vs, {{"x", 1}, {"y", 1}});
  CHECK(vtriple(vs, pre, Command(3, {{}}), pre).verdict == Verdict::holds);
  auto c = prog::compile(par(ix, iy), 4, 4).command;
  CHECK(vtriple(vs, pre, c, post).verdict == Verdict::holds);
  CHECK(vtriple_prog(vs, pre, par(ix, iy), post).verdict == Verdict::holds);
  auto wrong = vtriple(vs, pre, c, store(vs, {{"x", 1}, {"y", 0}}));
  CHECK(wrong.verdict == Verdict::fails);
  REQUIRE(wrong.failing_word);
  CHECK(c.contains(*wrong.failing_word));
  CHECK(astriple(vs, pre, *wrong.failing_word, store(vs, {{"x", 1}, {"y", 0}})).verdict == Verdict::fails);
  // Vacuous for the empty command.
  CHECK(vtriple(vs, pre, Command(3), vs.bottom()).verdict == Verdict::holds);
}

TEST_CASE("racy increment: the unsound triple fails with a witness") {
  auto sp = StateSpace::ranges({{"x", 0, 3}, {"t1", 0, 3}, {"t2", 0, 3}});
  auto vs = ViewStructure::separation(sp);
  auto p = racy_increment(sp);
  auto pre = store(vs, {{"x", 0}, {"t1", 0}, {"t2", 0}});
  View post = vs.bottom();
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) post |= store(vs, {{"x", 2}, {"t1", a}, {"t2", b}});
  auto r = vtriple_prog(vs, pre, p, post);
  CHECK(r.verdict == Verdict::fails);
  REQUIRE(r.failing_word);
  CHECK(r.failing_word->size() == 4);
  CHECK(vtriple(vs, pre, prog::compile(p, 4, 4).command, post).verdict == Verdict::fails);
  auto oracle = consistency_oracle(vs, pre, p, post);
  CHECK_FALSE(oracle.consistent());
  CHECK_FALSE(oracle.truncated);
}

TEST_CASE("atomic increments: full triples see whole interleavings") {
  auto sp = StateSpace::ranges({{"x", 0, 3}});
  auto vs = ViewStructure::separation(sp);
  auto p = par(incr(sp, "x"), incr(sp, "x"));
  auto pre = store(vs, {{"x", 0}}), post = store(vs, {{"x", 2}});
  CHECK(vtriple_prog(vs, pre, p, post).verdict == Verdict::holds);
  CHECK(consistency_oracle(vs, pre, p, post).consistent());
  CHECK(vtriple_prog(vs, pre, p, store(vs, {{"x", 1}})).verdict == Verdict::fails);
}

TEST_CASE("vtriple_prog agrees with vtriple on compiled finite programs") {
  auto sp = StateSpace::ranges({{"x", 0, 2}, {"y", 0, 1}});
  auto vs = ViewStructure::separation(sp);
  std::vector<Prog> progs{
      seq(incr(sp, "x"), assign(sp, "y", k(1))),
      par(incr(sp, "x"), Prog::choice({assign(sp, "y", k(0)), Prog::skip()})),
      par(seq(assume(sp, eq(v(sp, "y"), k(0))), incr(sp, "x")), assign(sp, "y", k(1))),
      Prog::choice({}),
  };
  std::mt19937 rng(3);
  for (const auto& p : progs)
    for (int i = 0; i < 25; ++i) {
      auto pre = random_view(rng, vs), post = random_view(rng, vs);
      auto a = vtriple_prog(vs, pre, p, post).verdict;
      CHECK(a == vtriple(vs, pre, prog::compile(p, 6, 6).command, post).verdict);
    }
}

TEST_CASE("loops and recursion are decided without a bound") {
  auto sp = StateSpace::ranges({{"x", 0, 3}});
  auto vs = ViewStructure::separation(sp);
  auto w = prog::while_loop(sp, lt(v(sp, "x"), k(3)), incr(sp, "x"));
  CHECK(vtriple_prog(vs, store(vs, {{"x", 0}}), w, store(vs, {{"x", 3}})).verdict == Verdict::holds);
  CHECK(vtriple_prog(vs, store(vs, {{"x", 0}}), w, store(vs, {{"x", 2}})).verdict == Verdict::fails);
  auto cd = countdown(sp);
  auto any = owns(vs, "x", {0, 1, 2, 3});
  CHECK(vtriple_prog(vs, any, cd, store(vs, {{"x", 0}})).verdict == Verdict::holds);
  auto r = vtriple_prog(vs, any, cd, store(vs, {{"x", 1}}));
  CHECK(r.verdict == Verdict::fails);
  // Non-tail recursion has unboundedly many residuals.
  auto a = incr(sp, "x");
  auto nt = Prog::rec("X", Prog::choice({Prog::skip(), seq(a, seq(Prog::var("X"), a))}));
  CHECK(vtriple_prog(vs, any, nt, any, {50, 4096}).verdict == Verdict::unknown);
}

TEST_CASE("check_derivation") {
  auto sp = StateSpace::ranges({{"x", 0, 2}, {"y", 0, 2}});
  auto vs = ViewStructure::separation(sp);
  auto ix = incr(sp, "x"), iy = incr(sp, "y");
  add_generated_axioms(vs, {ix.atom(), iy.atom()});
  auto x0 = store(vs, {{"x", 0}}), x1 = store(vs, {{"x", 1}}), y0 = store(vs, {{"y", 0}}), y1 = store(vs, {{"y", 1}});

  CHECK(check_derivation(vs, Prog::skip(), node("Vskip", x0, x0)).ok);
  CHECK_FALSE(check_derivation(vs, Prog::skip(), node("Vskip", x0, x1)).ok);

  auto conc = node("Vconc", vs.compose(x0, y0), vs.compose(x1, y1), {node("Vatom", x0, x1), node("Vatom", y0, y1)});
  CHECK(check_derivation(vs, par(ix, iy), conc).ok);

  auto bogus = node("Vconc", vs.compose(x0, y0), vs.compose(x1, y0), {node("Vatom", x0, x1), node("Vatom", y0, y0)});
  auto rep = check_derivation(vs, par(ix, iy), bogus);
  CHECK_FALSE(rep.ok);
  CHECK(rep.path == "1");
  CHECK(rep.reason.find("not an axiom") != std::string::npos);

  // Frame y away, then sequence two increments of x.
  auto x2 = store(vs, {{"x", 2}});
  auto seq2 = node("Vseq", x0, x2, {node("Vatom", x0, x1), node("Vatom", x1, x2)});
  Derivation framed{"Vframe", vs.compose(x0, y1), vs.compose(x2, y1), y1, {seq2}};
  CHECK(check_derivation(vs, seq(ix, ix), framed).ok);
  framed.frame = y0;
  CHECK_FALSE(check_derivation(vs, seq(ix, ix), framed).ok);
  CHECK_FALSE(check_derivation(vs, seq(ix, ix), node("Vmagic", x0, x2)).ok);
}

TEST_CASE("check_derivation: loops and recursion") {
  auto sp = StateSpace::ranges({{"x", 0, 3}});
  auto vs = ViewStructure::separation(sp);

  // while x < 3 do x := x + 1 end with invariant x ∈ {0..3}
  auto cond = lt(v(sp, "x"), k(3));
  auto w = prog::while_loop(sp, cond, incr(sp, "x"));
  auto yes = w.left().body().left().atom(), inc = w.left().body().right().atom(), no = w.right().atom();
  add_generated_axioms(vs, {yes, inc, no});
  auto inv = owns(vs, "x", {0, 1, 2, 3}), low = owns(vs, "x", {0, 1, 2}), done = store(vs, {{"x", 3}});
  auto body = node("Vseq", inv, inv, {atom_derivation(vs, yes, inv, low), atom_derivation(vs, inc, low, inv)});
  auto loop = node("Vseq", inv, done, {node("Viter", inv, inv, {body}), atom_derivation(vs, no, inv, done)});
  auto rep = check_derivation(vs, w, loop);
  INFO(rep.path << " " << rep.reason);
  CHECK(rep.ok);
  CHECK(vtriple_prog(vs, inv, w, done).verdict != Verdict::fails);
  CHECK(consistency_oracle(vs, inv, w, done).consistent());

  // rec X. (assume x > 0 ; x := x - 1 ; X) + assume x == 0
  auto cd = countdown(sp);
  const auto& br = cd.body().kids();
  auto pos = br[0].left().atom(), dec = br[0].right().left().atom(), zero = br[1].atom();
  add_generated_axioms(vs, {pos, dec, zero});
  auto x0 = store(vs, {{"x", 0}});
  auto step = node("Vseq", inv, x0,
                   {atom_derivation(vs, pos, inv, owns(vs, "x", {1, 2, 3})),
                    node("Vseq", owns(vs, "x", {1, 2, 3}), x0,
                         {atom_derivation(vs, dec, owns(vs, "x", {1, 2, 3}), inv), node("Vhyp", inv, x0)})});
  auto rec = node("Vrec", inv, x0, {node("Vchoice", inv, x0, {step, atom_derivation(vs, zero, inv, x0)})});
  auto rr = check_derivation(vs, cd, rec);
  INFO(rr.path << " " << rr.reason);
  CHECK(rr.ok);
  CHECK(vtriple_prog(vs, inv, cd, x0).verdict == Verdict::holds);

  // The hypothesis must match the enclosing Vrec.
  auto broken = rec;
  broken.premises[0].premises[0].premises[1].premises[1] = node("Vhyp", inv, inv);
  CHECK_FALSE(check_derivation(vs, cd, broken).ok);
}

TEST_CASE("consistency oracle") {
  auto sp = StateSpace::ranges({{"x", 0, 2}, {"y", 0, 2}});
  auto vs = ViewStructure::separation(sp);
  auto p = par(incr(sp, "x"), incr(sp, "y"));
  auto pre = store(vs, {{"x", 0}, {"y", 0}});
  auto good = consistency_oracle(vs, pre, p, store(vs, {{"x", 1}, {"y", 1}}));
  CHECK(good.consistent());
  CHECK(good.checked_states == 1);
  CHECK(consistency_oracle(vs, vs.bottom(), p, vs.bottom()).consistent());
  auto bad = consistency_oracle(vs, pre, p, store(vs, {{"x", 1}, {"y", 0}}));
  REQUIRE(bad.violations.size() == 3);
  for (const auto& viol : bad.violations) {
    CHECK(viol.from == st(sp, {0, 0}));
    CHECK(viol.to == st(sp, {1, 1}));
  }
}

TEST_CASE("holds verdicts are confirmed operationally; derivations never meet fails") {
  auto sp = StateSpace::ranges({{"x", 0, 1}, {"y", 0, 1}});
  auto vs = ViewStructure::separation(sp);
  std::vector<Atom> atoms{incr(sp, "x").atom(), assign(sp, "y", v(sp, "x")).atom(),
                          assume(sp, eq(v(sp, "y"), k(0))).atom(), assign(sp, "x", k(0)).atom()};
  std::mt19937 rng(21);
  int holds = 0;
  for (int i = 0; i < 150; ++i) {
    auto c = random_command(rng, atoms, 3);
    auto pre = random_view(rng, vs), post = random_view(rng, vs);
    auto r = vtriple(vs, pre, c, post);
    if (r.verdict != Verdict::holds) continue;
    ++holds;
    CHECK(ftriple_cmd(vs, pre, c, post));
    CHECK(btriple_cmd(vs, pre, c, post));
    CHECK(btriple(vs, pre, prog::denote(c), post));
  }
  CHECK(holds > 10);
}
