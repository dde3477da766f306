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
#include "tracelang/opsem.hpp"

namespace tracelang::laws {

namespace {

using namespace detail;
using L = lang::BoundedLang<char>;

const char* const kSuite = "calculus";

// Abstract judgements over languages of letters. Actions are skip and one to
// three single-letter languages.
struct Draw {
  explicit Draw(Rng& r) : rng(r) {
    n = 1 + pick(rng, 4);
    actions.push_back(lang::skip<char>(n));
    const std::size_t k = 1 + pick(rng, 3);
    for (std::size_t i = 0; i < k; ++i) {
      L a(n);
      for (char c : alphabet)
        if (coin(rng, 40)) a.insert({c});
      if (a.is_empty()) a.insert({alphabet[i]});
      actions.push_back(a);
    }
  }
  L lang() { return random_lang(rng, alphabet, n, 4); }
  /// Non-empty words only, so that ∪ with it keeps a premise.
  const L& action() { return actions[pick(rng, actions.size())]; }
  L skip() const { return lang::skip<char>(n); }
  std::vector<L> family() {
    std::vector<L> xs;
    const std::size_t k = 1 + pick(rng, 3);
    for (std::size_t i = 0; i < k; ++i) xs.push_back(lang());
    return xs;
  }

  bool plotkin(const L& p, const L& s, const L& p2, const L& s2) const {
    return opsem::plotkin_abstract(p, s, p2, s2, actions);
  }
  bool milner(const L& p, const L& q, const L& r) const { return opsem::milner_abstract(p, q, r, actions); }

  /// A Plotkin step P,s → R,s′ built to hold most of the time.
  struct Step {
    L p, s, r, s2;
  };
  Step plotkin_step() {
    const L& q = action();
    L r = lang();
    L p = lang::unite(lang::concat(q, r), coin(rng, 30) ? lang() : L(n));
    L s = lang();
    L s2 = random_subset(rng, lang::concat(s, q));
    return {p, s, r, s2};
  }
  /// A Milner step P →Q R, built the same way.
  struct MStep {
    L p, q, r;
  };
  MStep milner_step() {
    L q = action();
    L r = lang();
    L p = lang::unite(lang::concat(q, r), coin(rng, 30) ? lang() : L(n));
    return {p, q, r};
  }
  /// s′ ⊆ s;P
  L kahn_out(const L& s, const L& p) { return random_subset(rng, lang::concat(s, p)); }

  Rng& rng;
  std::vector<char> alphabet{'a', 'b', 'c'};
  std::size_t n = 0;
  std::vector<L> actions;
};

std::string show(std::initializer_list<std::pair<const char*, L>> parts) {
  std::string s;
  for (const auto& [name, l] : parts) s += (s.empty() ? "" : ", ") + std::string(name) + " = " + char_lang(l);
  return s;
}

}  // namespace

SuiteReport calculus_suite(const LawOptions& opts) {
  Stopwatch clock;
  SuiteReport rep;
  rep.suite = kSuite;
  Rng rng(opts.seed + 101);
  const std::size_t m = opts.calculus_instances;
  auto law = [&](const std::string& name, const std::function<void(Draw&, LawResult&)>& one) {
    rep.laws.push_back(repeat(kSuite, name, m, [&](LawResult& r) {
      Draw d(rng);
      one(d, r);
    }));
  };
  using lang::concat;
  using lang::leq;
  using lang::shuffle;
  using lang::star;
  using lang::unite;

  // Hoare: P;Q ⊆ R.
  auto hoare = [](const L& p, const L& q, const L& r) { return opsem::hoare_abstract(p, q, r); };
  law("Hskip", [&](Draw& d, LawResult& r) {
    auto p = d.lang();
    record(r, true, hoare(p, d.skip(), p), [&] { return show({{"P", p}}); });
  });
  law("Hseq", [&](Draw& d, LawResult& r) {
    auto p = d.lang(), q = d.lang(), q2 = d.lang();
    auto rr = coin(rng, 80) ? unite(concat(p, q), d.lang()) : d.lang();
    auto s = unite(concat(rr, q2), d.lang());
    record(r, hoare(p, q, rr) && hoare(rr, q2, s), hoare(p, concat(q, q2), s),
           [&] { return show({{"P", p}, {"Q", q}, {"R", rr}, {"Q'", q2}, {"S", s}}); });
  });
  law("Hchoice", [&](Draw& d, LawResult& r) {
    auto p = d.lang();
    auto xs = d.family();
    L rr = d.lang();
    for (const auto& q : xs) rr = unite(rr, concat(p, q));
    if (coin(rng, 20)) rr = d.lang();
    bool pre = true;
    for (const auto& q : xs) pre = pre && hoare(p, q, rr);
    record(r, pre, hoare(p, lang::big_union(xs, d.n), rr), [&] { return show({{"P", p}, {"R", rr}}); });
  });
  law("Hiter", [&](Draw& d, LawResult& r) {
    auto q = d.lang();
    auto p = coin(rng, 80) ? concat(d.lang(), star(q)) : d.lang();
    record(r, hoare(p, q, p), hoare(p, star(q), p), [&] { return show({{"P", p}, {"Q", q}}); });
  });
  law("Hcons", [&](Draw& d, LawResult& r) {
    auto p = d.lang(), q = d.lang();
    auto rr = unite(concat(p, q), d.lang());
    auto p2 = random_subset(rng, p);
    auto r2 = unite(rr, d.lang());
    record(r, leq(p2, p) && hoare(p, q, rr) && leq(rr, r2), hoare(p2, q, r2),
           [&] { return show({{"P'", p2}, {"Q", q}, {"R'", r2}}); });
  });
  law("Hdisj", [&](Draw& d, LawResult& r) {
    auto q = d.lang();
    auto xs = d.family();
    L rr = d.lang();
    for (const auto& p : xs) rr = unite(rr, concat(p, q));
    bool pre = true;
    for (const auto& p : xs) pre = pre && hoare(p, q, rr);
    record(r, pre, hoare(lang::big_union(xs, d.n), q, rr), [&] { return show({{"Q", q}, {"R", rr}}); });
  });
  law("Hconj", [&](Draw& d, LawResult& r) {
    auto p = d.lang(), q = d.lang(), p2 = d.lang(), q2 = d.lang();
    auto rr = unite(concat(p, q), d.lang()), r2 = unite(concat(p2, q2), d.lang());
    record(r, hoare(p, q, rr) && hoare(p2, q2, r2),
           hoare(lang::intersect(p, p2), lang::intersect(q, q2), lang::intersect(rr, r2)),
           [&] { return show({{"P", p}, {"Q", q}, {"R", rr}, {"P'", p2}, {"Q'", q2}, {"R'", r2}}); });
  });
  law("Hframe", [&](Draw& d, LawResult& r) {
    auto p = d.lang(), q = d.lang(), f = d.lang();
    auto rr = unite(concat(p, q), d.lang());
    record(r, hoare(p, q, rr), hoare(shuffle(f, p), q, shuffle(f, rr)),
           [&] { return show({{"F", f}, {"P", p}, {"Q", q}, {"R", rr}}); });
  });
  law("Hconc", [&](Draw& d, LawResult& r) {
    auto p = d.lang(), q = d.lang(), p2 = d.lang(), q2 = d.lang();
    auto rr = unite(concat(p, q), d.lang()), r2 = unite(concat(p2, q2), d.lang());
    record(r, hoare(p, q, rr) && hoare(p2, q2, r2), hoare(shuffle(p, p2), shuffle(q, q2), shuffle(rr, r2)),
           [&] { return show({{"P", p}, {"Q", q}, {"R", rr}, {"P'", p2}, {"Q'", q2}, {"R'", r2}}); });
  });

  // Plotkin: ∃Q ∈ Actions. P ⊇ Q;P′ and s;Q ⊇ s′.
  law("Paction", [&](Draw& d, LawResult& r) {
    auto p = d.action(), s = d.lang();
    auto s2 = d.kahn_out(s, p);
    record(r, true, d.plotkin(p, s, d.skip(), s2), [&] { return show({{"P", p}, {"s", s}, {"s'", s2}}); });
  });
  law("Pseq1", [&](Draw& d, LawResult& r) {
    auto p = d.lang(), s = d.lang();
    record(r, true, d.plotkin(concat(d.skip(), p), s, p, s), [&] { return show({{"P", p}, {"s", s}}); });
  });
  law("Pseq2", [&](Draw& d, LawResult& r) {
    auto st = d.plotkin_step();
    auto p2 = d.lang();
    record(r, d.plotkin(st.p, st.s, st.r, st.s2), d.plotkin(concat(st.p, p2), st.s, concat(st.r, p2), st.s2),
           [&] { return show({{"P", st.p}, {"R", st.r}, {"P'", p2}}); });
  });
  law("Pchoice", [&](Draw& d, LawResult& r) {
    auto xs = d.family();
    auto p = xs[pick(rng, xs.size())];
    auto s = d.lang();
    record(r, true, d.plotkin(lang::big_union(xs, d.n), s, p, s), [&] { return show({{"P", p}, {"s", s}}); });
  });
  law("Piter1", [&](Draw& d, LawResult& r) {
    auto p = d.lang(), s = d.lang();
    record(r, true, d.plotkin(star(p), s, d.skip(), s), [&] { return show({{"P", p}, {"s", s}}); });
  });
  law("Piter2", [&](Draw& d, LawResult& r) {
    auto p = d.lang(), s = d.lang();
    record(r, true, d.plotkin(star(p), s, concat(p, star(p)), s), [&] { return show({{"P", p}, {"s", s}}); });
  });
  law("Pconc1", [&](Draw& d, LawResult& r) {
    auto p = d.lang(), s = d.lang();
    record(r, true, d.plotkin(shuffle(d.skip(), p), s, p, s), [&] { return show({{"P", p}, {"s", s}}); });
  });
  law("Pconc2", [&](Draw& d, LawResult& r) {
    auto p = d.lang(), s = d.lang();
    record(r, true, d.plotkin(shuffle(p, d.skip()), s, p, s), [&] { return show({{"P", p}, {"s", s}}); });
  });
  law("Pconc3", [&](Draw& d, LawResult& r) {
    auto st = d.plotkin_step();
    auto p2 = d.lang();
    record(r, d.plotkin(st.p, st.s, st.r, st.s2), d.plotkin(shuffle(st.p, p2), st.s, shuffle(st.r, p2), st.s2),
           [&] { return show({{"P", st.p}, {"R", st.r}, {"P'", p2}}); });
  });
  law("Pconc4", [&](Draw& d, LawResult& r) {
    auto st = d.plotkin_step();
    auto p2 = d.lang();
    record(r, d.plotkin(st.p, st.s, st.r, st.s2), d.plotkin(shuffle(p2, st.p), st.s, shuffle(p2, st.r), st.s2),
           [&] { return show({{"P", st.p}, {"R", st.r}, {"P'", p2}}); });
  });

  // Milner: Q ∈ Actions and P ⊇ Q;R.
  law("Maction", [&](Draw& d, LawResult& r) {
    auto p = d.action();
    record(r, true, d.milner(p, p, d.skip()), [&] { return show({{"P", p}}); });
  });
  law("Mseq1", [&](Draw& d, LawResult& r) {
    auto p = d.lang();
    record(r, true, d.milner(concat(d.skip(), p), d.skip(), p), [&] { return show({{"P", p}}); });
  });
  law("Mseq2", [&](Draw& d, LawResult& r) {
    auto st = d.milner_step();
    auto p2 = d.lang();
    record(r, d.milner(st.p, st.q, st.r), d.milner(concat(st.p, p2), st.q, concat(st.r, p2)),
           [&] { return show({{"P", st.p}, {"Q", st.q}, {"R", st.r}, {"P'", p2}}); });
  });
  law("Mchoice", [&](Draw& d, LawResult& r) {
    auto xs = d.family();
    auto p = xs[pick(rng, xs.size())];
    record(r, true, d.milner(lang::big_union(xs, d.n), d.skip(), p), [&] { return show({{"P", p}}); });
  });
  law("Miter1", [&](Draw& d, LawResult& r) {
    auto p = d.lang();
    record(r, true, d.milner(star(p), d.skip(), d.skip()), [&] { return show({{"P", p}}); });
  });
  law("Miter2", [&](Draw& d, LawResult& r) {
    auto p = d.lang();
    record(r, true, d.milner(star(p), d.skip(), concat(p, star(p))), [&] { return show({{"P", p}}); });
  });
  law("Mconc1", [&](Draw& d, LawResult& r) {
    auto p = d.lang();
    record(r, true, d.milner(shuffle(d.skip(), p), d.skip(), p), [&] { return show({{"P", p}}); });
  });
  law("Mconc2", [&](Draw& d, LawResult& r) {
    auto p = d.lang();
    record(r, true, d.milner(shuffle(p, d.skip()), d.skip(), p), [&] { return show({{"P", p}}); });
  });
  law("Mconc3", [&](Draw& d, LawResult& r) {
    auto st = d.milner_step();
    auto p2 = d.lang();
    record(r, d.milner(st.p, st.q, st.r), d.milner(shuffle(st.p, p2), st.q, shuffle(st.r, p2)),
           [&] { return show({{"P", st.p}, {"Q", st.q}, {"R", st.r}, {"P'", p2}}); });
  });
  law("Mconc4", [&](Draw& d, LawResult& r) {
    auto st = d.milner_step();
    auto p2 = d.lang();
    record(r, d.milner(st.p, st.q, st.r), d.milner(shuffle(p2, st.p), st.q, shuffle(p2, st.r)),
           [&] { return show({{"P", st.p}, {"Q", st.q}, {"R", st.r}, {"P'", p2}}); });
  });

  // Kahn: s;P ⊇ s′.
  auto kahn = [](const L& p, const L& s, const L& s2) { return opsem::kahn_abstract(p, s, s2); };
  law("Kskip", [&](Draw& d, LawResult& r) {
    auto s = d.lang();
    record(r, true, kahn(d.skip(), s, s), [&] { return show({{"s", s}}); });
  });
  law("Kseq", [&](Draw& d, LawResult& r) {
    auto p = d.lang(), p2 = d.lang(), s = d.lang();
    auto s1 = d.kahn_out(s, p);
    auto s2 = d.kahn_out(s1, p2);
    record(r, kahn(p, s, s1) && kahn(p2, s1, s2), kahn(concat(p, p2), s, s2),
           [&] { return show({{"P", p}, {"P'", p2}, {"s", s}, {"s''", s2}}); });
  });
  law("Kchoice", [&](Draw& d, LawResult& r) {
    auto xs = d.family();
    auto p = xs[pick(rng, xs.size())];
    auto s = d.lang();
    auto s2 = d.kahn_out(s, p);
    record(r, kahn(p, s, s2), kahn(lang::big_union(xs, d.n), s, s2),
           [&] { return show({{"P", p}, {"s", s}, {"s'", s2}}); });
  });
  law("Kiter1", [&](Draw& d, LawResult& r) {
    auto p = d.lang(), s = d.lang();
    record(r, true, kahn(star(p), s, s), [&] { return show({{"P", p}, {"s", s}}); });
  });
  law("Kiter2", [&](Draw& d, LawResult& r) {
    auto p = d.lang(), s = d.lang();
    auto s1 = d.kahn_out(s, p);
    auto s2 = d.kahn_out(s1, star(p));
    record(r, kahn(p, s, s1) && kahn(star(p), s1, s2), kahn(star(p), s, s2),
           [&] { return show({{"P", p}, {"s", s}, {"s''", s2}}); });
  });
  law("Kconc1", [&](Draw& d, LawResult& r) {
    auto p = d.lang(), p2 = d.lang(), s = d.lang();
    auto s1 = d.kahn_out(s, p);
    auto s2 = d.kahn_out(s1, p2);
    record(r, kahn(p, s, s1) && kahn(p2, s1, s2), kahn(shuffle(p, p2), s, s2),
           [&] { return show({{"P", p}, {"P'", p2}, {"s", s}, {"s''", s2}}); });
  });
  law("Kconc2", [&](Draw& d, LawResult& r) {
    auto p = d.lang(), p2 = d.lang(), s = d.lang();
    auto s1 = d.kahn_out(s, p2);
    auto s2 = d.kahn_out(s1, p);
    record(r, kahn(p2, s, s1) && kahn(p, s1, s2), kahn(shuffle(p, p2), s, s2),
           [&] { return show({{"P", p}, {"P'", p2}, {"s", s}, {"s''", s2}}); });
  });

  // The extra description-level rule, on concrete states.
  {
    auto sp = trace::StateSpace::ranges({{"x", 0, 1}, {"y", 0, 1}});
    const auto states = sp.all_states();
    const opsem::OpSemConfig cfg{};
    rep.laws.push_back(repeat(kSuite, "PDfuturechoice", m, [&](LawResult& r) {
      const std::size_t n = 1 + pick(rng, 3);
      auto p = random_desc(rng, sp, n, n, 3), p1 = random_desc(rng, sp, n, n, 3), p2 = random_desc(rng, sp, n, n, 3);
      const trace::State s = states[pick(rng, states.size())];
      record(r, true, opsem::plotkin_desc(lang::concat(p, lang::unite(p1, p2)), s, lang::concat(p, p1), s, cfg),
             [&] { return "from " + sp.format(s); });
    }));
  }

  rep.seconds = clock.seconds();
  return rep;
}

}  // namespace tracelang::laws
