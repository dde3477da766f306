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
#include "oracle.hpp"
#include "tracelang/lang.hpp"

using namespace tracelang;
using Lang = lang::BoundedLang<char>;
using lang::Word;

namespace {

Lang from(const oracle::L& l, std::size_t bound) { return Lang::from_words(bound, l); }
oracle::L to(const Lang& l) { return oracle::L(l.begin(), l.end()); }
Word<char> w(const char* s) { return Word<char>(s, s + std::char_traits<char>::length(s)); }

const std::vector<char> kAbc{'a', 'b', 'c'};

}  // namespace

TEST_CASE("constants") {
  CHECK(lang::empty<char>(3).is_empty());
  CHECK(lang::skip<char>(3).words() == Lang::set_type{w("")});
  CHECK(lang::top<char>({'a'}, 2).words() == Lang::set_type{w(""), w("a"), w("aa")});
  CHECK_THROWS_AS(lang::top<char>({}, 2), Error);
  CHECK(lang::top<char>(kAbc, 3).size() == 1 + 3 + 9 + 27);
}

TEST_CASE("union and intersection") {
  Lang a(2, {w("a")}), b(2, {w("b")});
  CHECK(lang::unite(a, b).words() == Lang::set_type{w("a"), w("b")});
  CHECK(lang::intersect(Lang(2, {w("a"), w("b")}), Lang(2, {w("b"), w("c")})).words() == Lang::set_type{w("b")});
  CHECK(lang::eq(lang::unite(a, lang::empty<char>(2)), a));
}

TEST_CASE("bound mismatch is a hard error") {
  Lang a(2, {w("a")}), b(3, {w("a")});
  CHECK_THROWS_AS(lang::unite(a, b), BoundMismatch);
  CHECK_THROWS_AS(lang::concat(a, b), BoundMismatch);
  CHECK_THROWS_AS(lang::shuffle(a, b), BoundMismatch);
  CHECK_THROWS_AS(lang::leq(a, b), BoundMismatch);
  CHECK_THROWS_WITH(lang::intersect(a, b), doctest::Contains("bound mismatch"));
  CHECK_THROWS_AS(Lang(1, {w("ab")}), Error);
}

TEST_CASE("concat") {
  CHECK(lang::concat(Lang(2, {w("a")}), Lang(2, {w("b")})).words() == Lang::set_type{w("ab")});
  Lang p(2, {w("a"), w("aa")}), q(2, {w("a")});
  auto r = lang::concat(p, q);
  // Oracle: every word up to the bound that splits into P then Q.
  auto expect = oracle::filter({'a'}, 2, [&](const auto& x) { return oracle::in_concat(x, to(p), to(q)); });
  CHECK(to(r) == expect);
  CHECK(r.words() == Lang::set_type{w("aa")});
}

TEST_CASE("interleave_words") {
  CHECK(lang::interleave_words(w(""), w("ab")) == std::set<Word<char>>{w("ab")});
  CHECK(lang::interleave_words(w("a"), w("b")) == std::set<Word<char>>{w("ab"), w("ba")});
  auto r = lang::interleave_words(w("ab"), w("cd"));
  auto expect = oracle::filter({'a', 'b', 'c', 'd'}, 4,
                               [&](const auto& x) { return oracle::is_interleaving(x, w("ab"), w("cd")); });
  CHECK(std::set<Word<char>>(expect.begin(), expect.end()) == r);
  CHECK(r.size() == 6);
  // Repeated letters collapse interleavings.
  CHECK(lang::interleave_words(w("aa"), w("a")).size() == 1);
}

TEST_CASE("shuffle") {
  Lang p(3, {w("ab")}), q(3, {w("c")});
  auto r = lang::shuffle(p, q);
  CHECK(r.words() == Lang::set_type{w("abc"), w("acb"), w("cab")});
  CHECK(lang::eq(lang::shuffle(lang::skip<char>(3), p), p));
}

TEST_CASE("star and power") {
  CHECK(lang::star(lang::empty<char>(3)).words() == Lang::set_type{w("")});
  CHECK(lang::star(Lang(3, {w("a")})).words() == Lang::set_type{w(""), w("a"), w("aa"), w("aaa")});
  auto r = lang::star(Lang(5, {w(""), w("ab")}));
  CHECK(r.words() == Lang::set_type{w(""), w("ab"), w("abab")});
  CHECK(lang::eq(lang::power(Lang(4, {w("ab")}), 0), lang::skip<char>(4)));
  CHECK(lang::power(Lang(4, {w("ab")}), 2).words() == Lang::set_type{w("abab")});
  CHECK(lang::power(Lang(4, {w("ab")}), 3).is_empty());
}

TEST_CASE("operators agree with the brute-force oracle on random languages") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 60; ++iter) {
    const std::size_t n = 1 + iter % 4;
    auto op = oracle::random_lang(rng, kAbc, n, 0.3);
    auto oq = oracle::random_lang(rng, kAbc, n, 0.3);
    auto p = from(op, n), q = from(oq, n);
    CHECK(to(lang::concat(p, q)) == oracle::filter(kAbc, n, [&](const auto& x) { return oracle::in_concat(x, op, oq); }));
    CHECK(to(lang::shuffle(p, q)) == oracle::filter(kAbc, n, [&](const auto& x) { return oracle::in_shuffle(x, op, oq); }));
    CHECK(to(lang::star(p)) == oracle::filter(kAbc, n, [&](const auto& x) { return oracle::in_star(x, op); }));
  }
}

TEST_CASE("leq and eq") {
  Lang p(2, {w("a")});
  CHECK(lang::leq(lang::empty<char>(2), p));
  CHECK(lang::leq(p, Lang(2, {w("a"), w("b")})));
  CHECK_FALSE(lang::leq(Lang(2, {w("a"), w("b")}), p));
  std::mt19937 rng(11);
  for (int i = 0; i < 20; ++i) {
    auto a = from(oracle::random_lang(rng, kAbc, 3, 0.3), 3);
    auto b = from(oracle::random_lang(rng, kAbc, 3, 0.3), 3);
    CHECK(lang::eq(lang::shuffle(a, b), lang::shuffle(b, a)));
  }
}

TEST_CASE("bound soundness: truncating a result equals computing at the smaller bound") {
  std::mt19937 rng(3);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 5, m = 1 + i % 4;
    auto p = from(oracle::random_lang(rng, {'a', 'b'}, n, 0.25), n);
    auto q = from(oracle::random_lang(rng, {'a', 'b'}, n, 0.25), n);
    auto pm = p.truncate(m), qm = q.truncate(m);
    CHECK(lang::eq(lang::concat(p, q).truncate(m), lang::concat(pm, qm)));
    CHECK(lang::eq(lang::shuffle(p, q).truncate(m), lang::shuffle(pm, qm)));
    CHECK(lang::eq(lang::star(p).truncate(m), lang::star(pm)));
    CHECK(lang::eq(lang::star(lang::shuffle(p, lang::concat(q, p))).truncate(m),
                   lang::star(lang::shuffle(pm, lang::concat(qm, pm)))));
  }
}

TEST_CASE("star is monotone") {
  std::mt19937 rng(5);
  for (int i = 0; i < 30; ++i) {
    auto p = from(oracle::random_lang(rng, kAbc, 4, 0.1), 4);
    auto q = lang::unite(p, from(oracle::random_lang(rng, kAbc, 4, 0.1), 4));
    CHECK(lang::leq(lang::star(p), lang::star(q)));
  }
}

TEST_CASE("format") {
  Lang p(2, {w("ab"), w("")});
  CHECK(lang::format_lang(p, [](char c) { return std::string(1, c); }) == "{[], [ab]}");
}
