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

#include <functional>

#include "common.hpp"

namespace tracelang::laws {

namespace {

using namespace detail;
using L = lang::BoundedLang<char>;
using Op = std::function<L(const L&, const L&)>;

const char* const kSuite = "algebra";

// A fresh alphabet of 1..3 letters and a bound of 0..5 per instance.
struct Draw {
  explicit Draw(Rng& r) : rng(r) {
    const std::size_t k = 1 + pick(rng, 3);
    for (std::size_t i = 0; i < k; ++i) alphabet.push_back(static_cast<char>('a' + i));
    n = pick(rng, 6);
  }
  L lang() { return random_lang(rng, alphabet, n); }
  L top() const { return lang::top(alphabet, n); }
  std::vector<L> family(std::size_t min_size) {
    std::vector<L> xs;
    const std::size_t k = min_size + pick(rng, 4 - min_size);
    for (std::size_t i = 0; i < k; ++i) xs.push_back(lang());
    return xs;
  }

  Rng& rng;
  std::vector<char> alphabet;
  std::size_t n = 0;
};

struct NamedOp {
  std::string name;
  Op op;
};

std::vector<NamedOp> operators() {
  return {{"+", [](const L& p, const L& q) { return lang::unite(p, q); }},
          {"&", [](const L& p, const L& q) { return lang::intersect(p, q); }},
          {";", [](const L& p, const L& q) { return lang::concat(p, q); }},
          {"||", [](const L& p, const L& q) { return lang::shuffle(p, q); }}};
}

std::function<std::string()> show(std::initializer_list<std::pair<const char*, const L*>> parts) {
  std::vector<std::pair<std::string, L>> copy;
  for (const auto& [name, l] : parts) copy.emplace_back(name, *l);
  return [copy] {
    std::string s;
    for (const auto& [name, l] : copy) s += (s.empty() ? "" : ", ") + name + " = " + char_lang(l);
    return s;
  };
}

}  // namespace

SuiteReport algebra_suite(const LawOptions& opts) {
  Stopwatch clock;
  SuiteReport rep;
  rep.suite = kSuite;
  Rng rng(opts.seed);
  const std::size_t m = opts.algebra_instances;
  const auto ops = operators();
  const Op& unite = ops[0].op;
  const Op& concat = ops[2].op;
  const Op& shuffle = ops[3].op;

  // Table of commutativity, associativity and idempotence.
  const bool commutes[] = {true, true, false, true};
  const bool idempotent[] = {true, true, false, false};
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& o = ops[i];
    if (commutes[i]) {
      rep.laws.push_back(repeat(kSuite, "P " + o.name + " Q = Q " + o.name + " P", m, [&](LawResult& r) {
        Draw d(rng);
        auto p = d.lang(), q = d.lang();
        record(r, true, lang::eq(o.op(p, q), o.op(q, p)), show({{"P", &p}, {"Q", &q}}));
      }));
    } else {
      rep.laws.push_back(refute(kSuite, o.name + " is not commutative", m, [&]() -> std::string {
        Draw d(rng);
        auto p = d.lang(), q = d.lang();
        if (lang::eq(o.op(p, q), o.op(q, p))) return "";
        return show({{"P", &p}, {"Q", &q}})();
      }));
    }
  }
  for (const auto& o : ops)
    rep.laws.push_back(
        repeat(kSuite, "(P " + o.name + " Q) " + o.name + " R = P " + o.name + " (Q " + o.name + " R)", m,
               [&](LawResult& r) {
                 Draw d(rng);
                 auto p = d.lang(), q = d.lang(), s = d.lang();
                 record(r, true, lang::eq(o.op(o.op(p, q), s), o.op(p, o.op(q, s))),
                        show({{"P", &p}, {"Q", &q}, {"R", &s}}));
               }));
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& o = ops[i];
    if (idempotent[i]) {
      rep.laws.push_back(repeat(kSuite, "P " + o.name + " P = P", m, [&](LawResult& r) {
        Draw d(rng);
        auto p = d.lang();
        record(r, true, lang::eq(o.op(p, p), p), show({{"P", &p}}));
      }));
    } else {
      rep.laws.push_back(refute(kSuite, o.name + " is not idempotent", m, [&]() -> std::string {
        Draw d(rng);
        auto p = d.lang();
        if (lang::eq(o.op(p, p), p)) return "";
        return show({{"P", &p}})();
      }));
    }
  }

  // Units and zeros: ⊥, ⊤ over the instance alphabet, skip.
  enum class K { bot, top, skip };
  auto constant = [](const Draw& d, K k) {
    switch (k) {
      case K::bot: return lang::empty<char>(d.n);
      case K::top: return d.top();
      default: return lang::skip<char>(d.n);
    }
  };
  const char* kname[] = {"bot", "top", "skip"};
  const K units[] = {K::bot, K::top, K::skip, K::skip};
  const K zeros[] = {K::top, K::bot, K::bot, K::bot};
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& o = ops[i];
    const K u = units[i], z = zeros[i];
    rep.laws.push_back(repeat(kSuite, std::string(kname[static_cast<int>(u)]) + " is a unit of " + o.name, m,
                              [&](LawResult& r) {
                                Draw d(rng);
                                auto p = d.lang();
                                auto e = constant(d, u);
                                record(r, true, lang::eq(o.op(p, e), p) && lang::eq(o.op(e, p), p),
                                       show({{"P", &p}}));
                              }));
    rep.laws.push_back(repeat(kSuite, std::string(kname[static_cast<int>(z)]) + " is a zero of " + o.name, m,
                              [&](LawResult& r) {
                                Draw d(rng);
                                auto p = d.lang();
                                auto e = constant(d, z);
                                record(r, true, lang::eq(o.op(p, e), e) && lang::eq(o.op(e, p), e),
                                       show({{"P", &p}}));
                              }));
  }

  // Kleene star.
  rep.laws.push_back(repeat(kSuite, "skip + P;P* <= P*", m, [&](LawResult& r) {
    Draw d(rng);
    auto p = d.lang();
    auto ps = lang::star(p);
    record(r, true, lang::leq(unite(lang::skip<char>(d.n), concat(p, ps)), ps), show({{"P", &p}}));
  }));
  rep.laws.push_back(repeat(kSuite, "skip + P*;P <= P*", m, [&](LawResult& r) {
    Draw d(rng);
    auto p = d.lang();
    auto ps = lang::star(p);
    record(r, true, lang::leq(unite(lang::skip<char>(d.n), concat(ps, p)), ps), show({{"P", &p}}));
  }));
  // Half the R are built to satisfy the premise: Q*;P ∪ Q*;X.
  rep.laws.push_back(repeat(kSuite, "P + Q;R <= R implies Q*;P <= R", m, [&](LawResult& r) {
    Draw d(rng);
    auto p = d.lang(), q = d.lang();
    auto s = coin(rng) ? unite(concat(lang::star(q), p), concat(lang::star(q), d.lang())) : d.lang();
    record(r, lang::leq(unite(p, concat(q, s)), s), lang::leq(concat(lang::star(q), p), s),
           show({{"P", &p}, {"Q", &q}, {"R", &s}}));
  }));
  rep.laws.push_back(repeat(kSuite, "P + R;Q <= R implies P;Q* <= R", m, [&](LawResult& r) {
    Draw d(rng);
    auto p = d.lang(), q = d.lang();
    auto s = coin(rng) ? unite(concat(p, lang::star(q)), concat(d.lang(), lang::star(q))) : d.lang();
    record(r, lang::leq(unite(p, concat(s, q)), s), lang::leq(concat(p, lang::star(q)), s),
           show({{"P", &p}, {"Q", &q}, {"R", &s}}));
  }));

  // Distributivity over arbitrary unions; ∪ only over non-empty ones.
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& o = ops[i];
    const std::size_t min_size = o.name == "+" ? 1 : 0;
    for (bool left : {true, false}) {
      const std::string name = left ? "P " + o.name + " U X = U { P " + o.name + " Q | Q in X }"
                                    : "(U X) " + o.name + " P = U { Q " + o.name + " P | Q in X }";
      rep.laws.push_back(repeat(kSuite, name, m, [&](LawResult& r) {
        Draw d(rng);
        auto p = d.lang();
        auto xs = d.family(min_size);
        auto ux = lang::big_union(xs, d.n);
        std::vector<L> parts;
        for (const auto& q : xs) parts.push_back(left ? o.op(p, q) : o.op(q, p));
        auto lhs = left ? o.op(p, ux) : o.op(ux, p);
        record(r, true, lang::eq(lhs, lang::big_union(parts, d.n)), show({{"P", &p}, {"U X", &ux}}));
      }));
    }
  }

  // Exchange.
  rep.laws.push_back(repeat(kSuite, "(P || Q);(R || S) <= (P;R) || (Q;S)", m, [&](LawResult& r) {
    Draw d(rng);
    auto p = d.lang(), q = d.lang(), s = d.lang(), t = d.lang();
    record(r, true, lang::leq(concat(shuffle(p, q), shuffle(s, t)), shuffle(concat(p, s), concat(q, t))),
           show({{"P", &p}, {"Q", &q}, {"R", &s}, {"S", &t}}));
  }));
  rep.laws.push_back(repeat(kSuite, "P;(Q || R) <= (P;Q) || R", m, [&](LawResult& r) {
    Draw d(rng);
    auto p = d.lang(), q = d.lang(), s = d.lang();
    record(r, true, lang::leq(concat(p, shuffle(q, s)), shuffle(concat(p, q), s)),
           show({{"P", &p}, {"Q", &q}, {"R", &s}}));
  }));
  rep.laws.push_back(repeat(kSuite, "(P || Q);R <= P || (Q;R)", m, [&](LawResult& r) {
    Draw d(rng);
    auto p = d.lang(), q = d.lang(), s = d.lang();
    record(r, true, lang::leq(concat(shuffle(p, q), s), shuffle(p, concat(q, s))),
           show({{"P", &p}, {"Q", &q}, {"R", &s}}));
  }));
  rep.laws.push_back(repeat(kSuite, "P;Q <= P || Q", m, [&](LawResult& r) {
    Draw d(rng);
    auto p = d.lang(), q = d.lang();
    record(r, true, lang::leq(concat(p, q), shuffle(p, q)), show({{"P", &p}, {"Q", &q}}));
  }));

  rep.seconds = clock.seconds();
  return rep;
}

}  // namespace tracelang::laws
