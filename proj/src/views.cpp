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

#include "tracelang/views.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "tracelang/error.hpp"

namespace tracelang::views {

namespace {

Bits state_bits(const StateSpace& space, const StateSet& s) {
  Bits b(space.size());
  for (State x : s) b.set(x.index);
  return b;
}

StateSet bits_states(const Bits& b) {
  StateSet out;
  b.for_each([&](std::size_t i) { out.insert(State{static_cast<std::uint32_t>(i)}); });
  return out;
}

std::string state_condition(const StateSpace& space, State s) {
  std::string out;
  const auto vals = space.values(s);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out += " and ";
    out += space.vars()[i].name + " == " + std::to_string(vals[i]);
  }
  return out.empty() ? "true" : out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

ViewStructure ViewStructure::powerset(const StateSpace& space, std::size_t max_basis) {
  if (space.size() > max_basis)
    throw CapExceeded("powerset views: " + std::to_string(space.size()) + " states exceed the cap of " +
                      std::to_string(max_basis));
  ViewStructure vs;
  vs.kind_ = Kind::powerset;
  vs.name_ = "powerset";
  vs.space_ = space;
  const std::size_t n = space.size();
  vs.table_.assign(n * n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    vs.labels_.push_back(state_condition(space, State{static_cast<std::uint32_t>(i)}));
    vs.table_[i * n + i] = static_cast<std::int32_t>(i);
    Bits e(n);
    e.set(i);
    vs.erase_.push_back(e);
  }
  vs.unit_ = View(n);
  vs.unit_.set_all();
  vs.finish();
  return vs;
}

ViewStructure ViewStructure::separation(const StateSpace& space, std::size_t max_basis) {
  std::size_t n = 1;
  std::vector<std::size_t> radix;
  for (const auto& var : space.vars()) {
    radix.push_back(var.domain.size() + 1);
    n *= var.domain.size() + 1;
    if (n > max_basis)
      throw CapExceeded("separation views: more than " + std::to_string(max_basis) + " partial stores");
  }
  ViewStructure vs;
  vs.kind_ = Kind::separation;
  vs.name_ = "separation";
  vs.space_ = space;
  vs.radix_ = radix;

  // Mixed radix, first variable most significant; digit 0 is "unowned" and
  // digit d > 0 owns the (d-1)-th domain value.
  auto digits = [&](std::size_t e) {
    std::vector<std::size_t> d(radix.size());
    for (std::size_t k = radix.size(); k-- > 0;) {
      d[k] = e % radix[k];
      e /= radix[k];
    }
    return d;
  };
  std::vector<std::vector<std::size_t>> all(n);
  for (std::size_t e = 0; e < n; ++e) all[e] = digits(e);

  vs.table_.assign(n * n, -1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool disjoint = true;
      for (std::size_t k = 0; k < radix.size() && disjoint; ++k) disjoint = all[i][k] == 0 || all[j][k] == 0;
      // With disjoint domains the digits add without carries.
      if (disjoint) vs.table_[i * n + j] = static_cast<std::int32_t>(i + j);
    }

  const auto states = space.all_states();
  for (std::size_t e = 0; e < n; ++e) {
    std::string label;
    for (std::size_t k = 0; k < radix.size(); ++k) {
      if (all[e][k] == 0) continue;
      if (!label.empty()) label += " * ";
      label += space.vars()[k].name + " = " + std::to_string(space.vars()[k].domain[all[e][k] - 1]);
    }
    vs.labels_.push_back(label.empty() ? "emp" : label);
    Bits er(space.size());
    for (State s : states) {
      bool agrees = true;
      for (std::size_t k = 0; k < radix.size() && agrees; ++k)
        agrees = all[e][k] == 0 || space.value(s, k) == space.vars()[k].domain[all[e][k] - 1];
      if (agrees) er.set(s.index);
    }
    vs.erase_.push_back(er);
  }
  vs.unit_ = View(n);
  vs.unit_.set(0);
  vs.finish();
  return vs;
}

void ViewStructure::finish() {
  preceq_ = [](const View& a, const View& b) { return a.subset_of(b); };
}

View ViewStructure::top() const {
  View v(basis_size());
  v.set_all();
  return v;
}

View ViewStructure::element(std::size_t i) const {
  View v(basis_size());
  v.set(i);
  return v;
}

View ViewStructure::from_elements(const std::vector<std::size_t>& elems) const {
  View v(basis_size());
  for (auto e : elems) v.set(e);
  return v;
}

View ViewStructure::join(const std::vector<View>& vs) const {
  View out = bottom();
  for (const auto& v : vs) out |= v;
  return out;
}

View ViewStructure::meet(const std::vector<View>& vs) const {
  View out = top();
  for (const auto& v : vs) out &= v;
  return out;
}

std::optional<std::size_t> ViewStructure::compose_elements(std::size_t i, std::size_t j) const {
  const auto r = table_[i * basis_size() + j];
  if (r < 0) return std::nullopt;
  return static_cast<std::size_t>(r);
}

View ViewStructure::compose(const View& a, const View& b) const {
  View out = bottom();
  const std::size_t n = basis_size();
  a.for_each([&](std::size_t i) {
    b.for_each([&](std::size_t j) {
      const auto r = table_[i * n + j];
      if (r >= 0) out.set(static_cast<std::size_t>(r));
    });
  });
  return out;
}

View ViewStructure::compose_element(const View& a, std::size_t j) const {
  View out = bottom();
  const std::size_t n = basis_size();
  a.for_each([&](std::size_t i) {
    const auto r = table_[i * n + j];
    if (r >= 0) out.set(static_cast<std::size_t>(r));
  });
  return out;
}

Bits ViewStructure::erase_bits(const View& v) const {
  Bits out(space_.size());
  v.for_each([&](std::size_t i) { out |= erase_[i]; });
  return out;
}

StateSet ViewStructure::erase(const View& v) const { return bits_states(erase_bits(v)); }

bool ViewStructure::carrier_at_most(std::size_t n) const {
  return basis_size() < 63 && (std::uint64_t{1} << basis_size()) <= n;
}

std::vector<View> ViewStructure::all_views() const {
  if (basis_size() > 16)
    throw CapExceeded("carrier of " + name_ + " views has 2^" + std::to_string(basis_size()) + " elements");
  std::vector<View> out;
  const std::size_t n = basis_size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    View v(n);
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) v.set(i);
    out.push_back(v);
  }
  return out;
}

View ViewStructure::from_states(const StateSet& s) const {
  if (kind_ != Kind::powerset) throw Error("from_states: not a powerset view structure");
  View v = bottom();
  for (State x : s) v.set(x.index);
  return v;
}

std::optional<std::size_t> ViewStructure::store_element(
    const std::vector<std::pair<std::size_t, int>>& store) const {
  if (kind_ != Kind::separation) throw Error("store_element: not a separation view structure");
  std::vector<std::size_t> d(radix_.size(), 0);
  for (auto [var, value] : store) {
    const auto& dom = space_.vars().at(var).domain;
    auto it = std::find(dom.begin(), dom.end(), value);
    if (it == dom.end()) return std::nullopt;
    const std::size_t digit = static_cast<std::size_t>(it - dom.begin()) + 1;
    if (d[var] != 0 && d[var] != digit) return std::nullopt;
    d[var] = digit;
  }
  std::size_t e = 0;
  for (std::size_t k = 0; k < radix_.size(); ++k) e = e * radix_[k] + d[k];
  return e;
}

std::vector<std::pair<std::size_t, int>> ViewStructure::store_of(std::size_t element) const {
  if (kind_ != Kind::separation) throw Error("store_of: not a separation view structure");
  std::vector<std::pair<std::size_t, int>> out;
  for (std::size_t k = radix_.size(); k-- > 0;) {
    const std::size_t digit = element % radix_[k];
    element /= radix_[k];
    if (digit) out.push_back({k, space_.vars()[k].domain[digit - 1]});
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string ViewStructure::format(const View& v) const {
  if (v.none()) return "false";
  if (kind_ == Kind::powerset && v == top()) return "true";
  const bool wrap = kind_ == Kind::powerset && space_.var_count() > 1 && v.count() > 1;
  std::string out;
  v.for_each([&](std::size_t i) {
    if (!out.empty()) out += " or ";
    out += wrap ? "(" + labels_[i] + ")" : labels_[i];
  });
  return out;
}

// ---------------------------------------------------------------------------
// Axioms

std::vector<Axiom> generate_axioms(const ViewStructure& vs, const Atom& a) {
  std::vector<Axiom> out;
  const auto& space = vs.space();
  if (vs.kind() == ViewStructure::Kind::powerset) {
    for (State s : space.all_states()) {
      const auto& img = a.image(s);
      if (std::all_of(img.begin(), img.end(), [&](State t) { return t == s; }))
        out.push_back({vs.element(s.index), a, vs.from_states(StateSet(img.begin(), img.end()))});
    }
    return out;
  }
  const auto fp = trace::footprint(space, a);
  // Enumerate every assignment of the footprint variables.
  std::vector<std::size_t> idx(fp.size(), 0);
  const auto states = space.all_states();
  while (true) {
    std::vector<std::pair<std::size_t, int>> store;
    for (std::size_t k = 0; k < fp.size(); ++k) store.push_back({fp[k], space.vars()[fp[k]].domain[idx[k]]});
    const std::size_t pre = *vs.store_element(store);
    View post = vs.bottom();
    vs.erase_element(pre).for_each([&](std::size_t si) {
      for (State t : a.image(State{static_cast<std::uint32_t>(si)})) {
        std::vector<std::pair<std::size_t, int>> proj;
        for (auto var : fp) proj.push_back({var, space.value(t, var)});
        post.set(*vs.store_element(proj));
      }
    });
    out.push_back({vs.element(pre), a, post});
    std::size_t k = 0;
    while (k < fp.size() && ++idx[k] == space.vars()[fp[k]].domain.size()) idx[k++] = 0;
    if (k == fp.size()) break;
  }
  return out;
}

void add_generated_axioms(ViewStructure& vs, const std::vector<Atom>& atoms) {
  for (const auto& a : atoms)
    for (auto& ax : generate_axioms(vs, a)) vs.add_axiom(std::move(ax));
}

namespace {

bool image_within(const Atom& a, const Bits& pre, const Bits& post) {
  bool ok = true;
  pre.for_each([&](std::size_t si) {
    if (!ok) return;
    for (State t : a.image(State{static_cast<std::uint32_t>(si)}))
      if (!post.test(t.index)) {
        ok = false;
        return;
      }
  });
  return ok;
}

}  // namespace

std::optional<std::string> axiom_counterexample(const ViewStructure& vs, const Axiom& ax) {
  for (std::size_t j = 0; j < vs.basis_size(); ++j) {
    const Bits pre = vs.erase_bits(vs.compose_element(ax.pre, j));
    const Bits post = vs.erase_bits(vs.compose_element(ax.post, j));
    bool ok = true;
    std::string detail;
    pre.for_each([&](std::size_t si) {
      if (!ok) return;
      const State s{static_cast<std::uint32_t>(si)};
      for (State t : ax.atom.image(s))
        if (!post.test(t.index)) {
          ok = false;
          detail = vs.space().format(s) + " -> " + vs.space().format(t);
          return;
        }
    });
    if (!ok)
      return "axiom {" + vs.format(ax.pre) + "} " + ax.atom.label() + " {" + vs.format(ax.post) +
             "} fails under frame {" + vs.element_label(j) + "}: " + detail;
  }
  return std::nullopt;
}

bool axiom_sound_full(const ViewStructure& vs, const Axiom& ax) {
  for (const auto& w : vs.all_views())
    if (!image_within(ax.atom, vs.erase_bits(vs.compose(ax.pre, w)), vs.erase_bits(vs.compose(ax.post, w))))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Structure checks

bool StructureReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.passed; });
}

const PropertyResult* StructureReport::find(const std::string& name) const {
  for (const auto& p : properties)
    if (p.name == name) return &p;
  return nullptr;
}

namespace {

class Checker {
 public:
  Checker(const ViewStructure& vs, std::uint64_t seed, std::size_t samples, std::size_t limit)
      : vs_(vs), rng_(seed) {
    exhaustive_ = vs.carrier_at_most(limit);
    if (exhaustive_) {
      pool_ = vs.all_views();
    } else {
      pool_ = {vs.bottom(), vs.top(), vs.unit()};
      for (std::size_t i = 0; i < vs.basis_size(); ++i) pool_.push_back(vs.element(i));
      for (const auto& ax : vs.axioms()) {
        pool_.push_back(ax.pre);
        pool_.push_back(ax.post);
      }
      std::uniform_real_distribution<double> density(0.0, 1.0);
      for (std::size_t k = 0; k < samples; ++k) {
        const double d = density(rng_) * density(rng_);
        View v = vs.bottom();
        for (std::size_t i = 0; i < vs.basis_size(); ++i)
          if (density(rng_) < d) v.set(i);
        pool_.push_back(v);
      }
    }
  }

  std::string show(const View& v) const { return "{" + vs_.format(v) + "}"; }

  // Pairs over the pool; triples over a bounded slice of it.
  template <typename F>
  PropertyResult pairs(std::string name, F&& f) {
    PropertyResult r{std::move(name), true, exhaustive_, 0, {}};
    for (const auto& a : pool_)
      for (const auto& b : pool_) {
        ++r.instances;
        if (auto c = f(a, b)) {
          r.passed = false;
          r.counterexample = *c;
          return r;
        }
      }
    return r;
  }

  template <typename F>
  PropertyResult triples(std::string name, F&& f) {
    PropertyResult r{std::move(name), true, exhaustive_, 0, {}};
    const std::size_t m = exhaustive_ ? pool_.size() : std::min<std::size_t>(pool_.size(), 40);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) {
          ++r.instances;
          if (auto c = f(pool_[i], pool_[j], pool_[k])) {
            r.passed = false;
            r.counterexample = *c;
            return r;
          }
        }
    return r;
  }

  bool exhaustive() const { return exhaustive_; }
  const std::vector<View>& pool() const { return pool_; }

 private:
  const ViewStructure& vs_;
  std::mt19937_64 rng_;
  bool exhaustive_ = false;
  std::vector<View> pool_;
};

using Maybe = std::optional<std::string>;

}  // namespace

StructureReport check_structure(const ViewStructure& vs, std::uint64_t seed, std::size_t samples,
                                std::size_t exhaustive_limit) {
  StructureReport rep;
  Checker ck(vs, seed, samples, exhaustive_limit);
  auto show = [&](const View& v) { return ck.show(v); };
  auto& P = rep.properties;

  P.push_back(ck.triples("entails is a partial order", [&](const View& a, const View& b, const View& c) -> Maybe {
    if (!vs.entails(a, a)) return "not reflexive at " + show(a);
    if (vs.entails(a, b) && vs.entails(b, a) && a != b) return "not antisymmetric at " + show(a) + ", " + show(b);
    if (vs.entails(a, b) && vs.entails(b, c) && !vs.entails(a, c))
      return "not transitive at " + show(a) + ", " + show(b) + ", " + show(c);
    return std::nullopt;
  }));
  P.push_back(ck.triples("join is the least upper bound", [&](const View& a, const View& b, const View& c) -> Maybe {
    const View j = vs.join(a, b);
    if (!vs.entails(a, j) || !vs.entails(b, j)) return "not an upper bound of " + show(a) + ", " + show(b);
    if (vs.entails(a, c) && vs.entails(b, c) && !vs.entails(j, c))
      return "not least: " + show(j) + " above " + show(c);
    if (!vs.entails(vs.join(std::vector<View>{}), a)) return "empty join is not the bottom";
    if (vs.join(std::vector<View>{a, b, c}) != vs.join(vs.join(a, b), c)) return "set join disagrees with binary join";
    return std::nullopt;
  }));
  P.push_back(ck.triples("meet is the greatest lower bound", [&](const View& a, const View& b, const View& c) -> Maybe {
    const View m = vs.meet(a, b);
    if (!vs.entails(m, a) || !vs.entails(m, b)) return "not a lower bound of " + show(a) + ", " + show(b);
    if (vs.entails(c, a) && vs.entails(c, b) && !vs.entails(c, m)) return "not greatest below " + show(c);
    if (!vs.entails(a, vs.meet(std::vector<View>{}))) return "empty meet is not the top";
    return std::nullopt;
  }));
  P.push_back(ck.triples("compose is associative", [&](const View& a, const View& b, const View& c) -> Maybe {
    if (vs.compose(vs.compose(a, b), c) != vs.compose(a, vs.compose(b, c)))
      return show(a) + ", " + show(b) + ", " + show(c);
    return std::nullopt;
  }));
  P.push_back(ck.pairs("compose is commutative", [&](const View& a, const View& b) -> Maybe {
    if (vs.compose(a, b) != vs.compose(b, a)) return show(a) + ", " + show(b);
    return std::nullopt;
  }));
  P.push_back(ck.pairs("unit is neutral", [&](const View& a, const View&) -> Maybe {
    if (vs.compose(a, vs.unit()) != a) return show(a);
    return std::nullopt;
  }));
  P.push_back(ck.triples("compose distributes over join", [&](const View& a, const View& b, const View& c) -> Maybe {
    if (vs.compose(a, vs.join(b, c)) != vs.join(vs.compose(a, b), vs.compose(a, c)))
      return show(a) + " * (" + show(b) + " or " + show(c) + ")";
    if (vs.compose(a, vs.bottom()) != vs.bottom()) return show(a) + " * bottom";
    return std::nullopt;
  }));
  P.push_back(ck.triples("preceq is a preorder", [&](const View& a, const View& b, const View& c) -> Maybe {
    if (!vs.preceq(a, a)) return "not reflexive at " + show(a);
    if (vs.preceq(a, b) && vs.preceq(b, c) && !vs.preceq(a, c))
      return "not transitive at " + show(a) + ", " + show(b) + ", " + show(c);
    return std::nullopt;
  }));
  P.push_back(ck.pairs("entails-closure", [&](const View& a, const View& b) -> Maybe {
    if (vs.entails(a, b) && !vs.preceq(a, b)) return show(a) + " entails " + show(b) + " but not preceq";
    return std::nullopt;
  }));
  P.push_back(ck.triples("join-closure", [&](const View& a, const View& b, const View& c) -> Maybe {
    if (vs.preceq(a, c) && vs.preceq(b, c) && !vs.preceq(vs.join(a, b), c))
      return show(a) + " or " + show(b) + " vs " + show(c);
    if (!vs.preceq(vs.bottom(), c)) return "bottom not below " + show(c);
    return std::nullopt;
  }));
  P.push_back(ck.triples("locality", [&](const View& a, const View& b, const View& c) -> Maybe {
    if (vs.preceq(a, b) && !vs.preceq(vs.compose(a, c), vs.compose(b, c)))
      return show(a) + " <= " + show(b) + " under frame " + show(c);
    return std::nullopt;
  }));
  P.push_back(ck.pairs("erase is monotone", [&](const View& a, const View& b) -> Maybe {
    if (vs.preceq(a, b) && !vs.erase_bits(a).subset_of(vs.erase_bits(b))) return show(a) + ", " + show(b);
    return std::nullopt;
  }));
  P.push_back(ck.pairs("erase is a join-homomorphism", [&](const View& a, const View& b) -> Maybe {
    if (vs.erase_bits(vs.join(a, b)) != (vs.erase_bits(a) | vs.erase_bits(b))) return show(a) + ", " + show(b);
    if (vs.erase_bits(vs.bottom()).any()) return "bottom erases to a non-empty set";
    return std::nullopt;
  }));

  {
    PropertyResult r{"axioms are sound", true, true, 0, {}};
    for (const auto& ax : vs.axioms()) {
      ++r.instances;
      if (auto c = axiom_counterexample(vs, ax)) {
        r.passed = false;
        r.counterexample = *c;
        break;
      }
    }
    P.push_back(r);
  }

  // Singleton frames stand for all frames; compare both on the carrier.
  {
    PropertyResult r{"frame reduction agrees with all frames", true, ck.exhaustive(), 0, {}};
    if (ck.exhaustive()) {
      const auto all = vs.all_views();
      std::vector<Atom> atoms;
      for (const auto& ax : vs.axioms()) {
        ++r.instances;
        const bool single = !axiom_counterexample(vs, ax).has_value();
        if (single != axiom_sound_full(vs, ax)) {
          r.passed = false;
          r.counterexample = "axiom with atom " + ax.atom.label();
          break;
        }
        if (std::find(atoms.begin(), atoms.end(), ax.atom) == atoms.end()) atoms.push_back(ax.atom);
      }
      for (const auto& a : atoms) {
        if (!r.passed) break;
        const auto d = trace::atom_description(a, 1);
        for (const auto& v : all) {
          for (const auto& v2 : all) {
            ++r.instances;
            if (ftriple(vs, v, d, v2) != ftriple_full(vs, v, d, v2)) {
              r.passed = false;
              r.counterexample = show(v) + " " + a.label() + " " + show(v2);
              break;
            }
          }
          if (!r.passed) break;
        }
      }
    }
    P.push_back(r);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Basic and framing triples

bool btriple_states(const Description& p, const Bits& pre, const Bits& post) {
  for (const auto& u : p) {
    if (u.empty()) {
      if (!pre.subset_of(post)) return false;
      continue;
    }
    if (!pre.test(u.front().from.index) || !trace::is_consistent(u)) continue;
    if (!post.test(u.back().to.index)) return false;
  }
  return true;
}

bool btriple(const ViewStructure& vs, const View& v, const Description& p, const View& v2) {
  return btriple_states(p, vs.erase_bits(v), vs.erase_bits(v2));
}

bool btriple_atom(const ViewStructure& vs, const View& v, const Atom& a, const View& v2) {
  return image_within(a, vs.erase_bits(v), vs.erase_bits(v2));
}

namespace {

bool cmd_within(const ViewStructure& vs, const Command& c, const Bits& pre, const Bits& post) {
  const auto out = opsem::sem_cmd_set(c, bits_states(pre));
  return state_bits(vs.space(), out).subset_of(post);
}

}  // namespace

bool btriple_cmd(const ViewStructure& vs, const View& v, const Command& c, const View& v2) {
  return cmd_within(vs, c, vs.erase_bits(v), vs.erase_bits(v2));
}

bool ftriple(const ViewStructure& vs, const View& v, const Description& p, const View& v2) {
  for (std::size_t j = 0; j < vs.basis_size(); ++j)
    if (!btriple_states(p, vs.erase_bits(vs.compose_element(v, j)), vs.erase_bits(vs.compose_element(v2, j))))
      return false;
  return true;
}

bool ftriple_cmd(const ViewStructure& vs, const View& v, const Command& c, const View& v2) {
  for (std::size_t j = 0; j < vs.basis_size(); ++j)
    if (!cmd_within(vs, c, vs.erase_bits(vs.compose_element(v, j)), vs.erase_bits(vs.compose_element(v2, j))))
      return false;
  return true;
}

bool ftriple_atom(const ViewStructure& vs, const View& v, const Atom& a, const View& v2) {
  for (std::size_t j = 0; j < vs.basis_size(); ++j)
    if (!image_within(a, vs.erase_bits(vs.compose_element(v, j)), vs.erase_bits(vs.compose_element(v2, j))))
      return false;
  return true;
}

bool ftriple_skip(const ViewStructure& vs, const View& v, const View& v2) {
  for (std::size_t j = 0; j < vs.basis_size(); ++j)
    if (!vs.erase_bits(vs.compose_element(v, j)).subset_of(vs.erase_bits(vs.compose_element(v2, j)))) return false;
  return true;
}

bool ftriple_full(const ViewStructure& vs, const View& v, const Description& p, const View& v2) {
  for (const auto& w : vs.all_views())
    if (!btriple_states(p, vs.erase_bits(vs.compose(v, w)), vs.erase_bits(vs.compose(v2, w)))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Full triples
//
// astriple(v, a:as, v′) asks for some intermediate view. Framing triples are
// upward closed in the postview and full triples are downward closed in the
// preview and closed under joins of previews, so the best intermediate view
// is the join of the basis elements from which the rest of the sequence is
// derivable. Computing that join backwards decides astriple exactly.

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    case Verdict::unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

class Backward {
 public:
  explicit Backward(const ViewStructure& vs) : vs_(vs) {}

  // {b | ftriple({b}, skip, post)}
  View skip_pre(const View& post) const {
    View out = vs_.bottom();
    const auto frames = frame_posts(post);
    for (std::size_t b = 0; b < vs_.basis_size(); ++b) {
      bool ok = true;
      for (std::size_t j = 0; j < vs_.basis_size() && ok; ++j)
        if (auto e = vs_.compose_elements(b, j)) ok = vs_.erase_element(*e).subset_of(frames[j]);
      if (ok) out.set(b);
    }
    return out;
  }

  // {b | ftriple({b}, a, post)}
  View atom_pre(const Atom& a, const View& post) {
    auto key = std::make_pair(a.id(), post);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    View out = vs_.bottom();
    const auto frames = frame_posts(post);
    for (std::size_t b = 0; b < vs_.basis_size(); ++b) {
      bool ok = true;
      for (std::size_t j = 0; j < vs_.basis_size() && ok; ++j)
        if (auto e = vs_.compose_elements(b, j)) ok = image_within(a, vs_.erase_element(*e), frames[j]);
      if (ok) out.set(b);
    }
    memo_.emplace(std::move(key), out);
    return out;
  }

 private:
  std::vector<Bits> frame_posts(const View& post) const {
    std::vector<Bits> out;
    out.reserve(vs_.basis_size());
    for (std::size_t j = 0; j < vs_.basis_size(); ++j) out.push_back(vs_.erase_bits(vs_.compose_element(post, j)));
    return out;
  }

  const ViewStructure& vs_;
  std::map<std::pair<std::uint64_t, View>, View> memo_;
};

TripleResult failure(const ViewStructure& vs, const View& v, const View& weakest, const AtomSeq& as) {
  TripleResult r;
  r.verdict = Verdict::fails;
  r.failing_word = as;
  View missing = v;
  missing.for_each([&](std::size_t b) {
    if (!r.failing_element && !weakest.test(b)) r.failing_element = b;
  });
  r.witness = "atom sequence [" + prog::format_atom_seq(as) + "] cannot carry {" +
              vs.element_label(*r.failing_element) + "} to the postview";
  return r;
}

}  // namespace

View astriple_pre(const ViewStructure& vs, const AtomSeq& as, const View& v2) {
  Backward bw(vs);
  View g = bw.skip_pre(v2);
  for (std::size_t i = as.size(); i-- > 0;) g = bw.atom_pre(as[i], g);
  return g;
}

TripleResult astriple(const ViewStructure& vs, const View& v, const AtomSeq& as, const View& v2) {
  const View g = astriple_pre(vs, as, v2);
  if (vs.entails(v, g)) return {Verdict::holds, "", std::nullopt, std::nullopt};
  return failure(vs, v, g, as);
}

TripleResult vtriple(const ViewStructure& vs, const View& v, const Command& c, const View& v2) {
  // Reversed words in sorted order share their suffixes as prefixes.
  std::vector<AtomSeq> rev;
  for (const auto& w : c) rev.emplace_back(w.rbegin(), w.rend());
  std::sort(rev.begin(), rev.end());
  Backward bw(vs);
  std::vector<View> stack{bw.skip_pre(v2)};
  const AtomSeq* prev = nullptr;
  for (const auto& r : rev) {
    std::size_t common = 0;
    if (prev)
      while (common < prev->size() && common < r.size() && (*prev)[common] == r[common]) ++common;
    stack.resize(common + 1);
    for (std::size_t i = common; i < r.size(); ++i) stack.push_back(bw.atom_pre(r[i], stack.back()));
    if (!vs.entails(v, stack.back())) return failure(vs, v, stack.back(), AtomSeq(r.rbegin(), r.rend()));
    prev = &r;
  }
  return {Verdict::holds, "", std::nullopt, std::nullopt};
}

TripleResult vtriple_prog(const ViewStructure& vs, const View& v, const Prog& p, const View& v2,
                          const ProgSearchOptions& opts) {
  if (!prog::is_closed(p)) throw ElaborationError("vtriple_prog: program has free recursion variables");
  struct Edge {
    opsem::Action action;
    std::size_t to;
  };
  std::vector<Prog> nodes{opsem::canonical(p)};
  std::map<Prog, std::size_t> index{{nodes[0], 0}};
  std::vector<std::vector<Edge>> edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes.size() > opts.node_cap)
      return {Verdict::unknown, "more than " + std::to_string(opts.node_cap) + " residual programs", std::nullopt,
              std::nullopt};
    std::vector<Edge> out;
    for (const auto& st : opsem::milner_steps(nodes[i])) {
      auto r = opsem::canonical(st.residual);
      auto [it, fresh] = index.emplace(r, nodes.size());
      if (fresh) nodes.push_back(r);
      out.push_back({st.action, it->second});
    }
    edges.push_back(std::move(out));
  }

  // For each residual: the weakest previews of its atom sequences, each with
  // one sequence that produces it.
  Backward bw(vs);
  std::vector<std::map<View, AtomSeq>> val(nodes.size());
  const View base = bw.skip_pre(v2);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].is_skip()) val[i].emplace(base, AtomSeq{});
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (const auto& e : edges[i]) {
        if (e.to == i && !e.action) continue;
        for (const auto& [g, word] : std::map<View, AtomSeq>(val[e.to])) {
          View pre = e.action ? bw.atom_pre(*e.action, g) : g;
          if (val[i].count(pre)) continue;
          AtomSeq w2;
          if (e.action) w2.push_back(*e.action);
          w2.insert(w2.end(), word.begin(), word.end());
          val[i].emplace(std::move(pre), std::move(w2));
          changed = true;
          if (val[i].size() > opts.view_cap)
            return {Verdict::unknown, "more than " + std::to_string(opts.view_cap) + " weakest previews",
                    std::nullopt, std::nullopt};
        }
      }
  }
  for (const auto& [g, word] : val[0])
    if (!vs.entails(v, g)) return failure(vs, v, g, word);
  return {Verdict::holds, "", std::nullopt, std::nullopt};
}

// ---------------------------------------------------------------------------
// Derivations

namespace {

using Hyps = std::map<std::string, std::pair<View, View>>;

DerivationReport bad(const std::string& path, std::string reason) { return {false, path, std::move(reason)}; }

std::string child(const std::string& path, std::size_t i) {
  return path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
}

DerivationReport check_node(const ViewStructure& vs, const Prog& p, const Derivation& d, const std::string& path,
                            const Hyps& hyps) {
  using K = Prog::Kind;
  const auto& r = d.rule;
  const auto n = d.premises.size();
  auto arity = [&](std::size_t want) -> std::optional<DerivationReport> {
    if (n != want)
      return bad(path, r + " expects " + std::to_string(want) + " premise(s), got " + std::to_string(n));
    return std::nullopt;
  };
  auto shape = [&](K k, const char* what) -> std::optional<DerivationReport> {
    if (p.kind() != k) return bad(path, r + " applies to " + what + ", not " + p.to_string());
    return std::nullopt;
  };
  auto sub = [&](const Prog& q, std::size_t i, const Hyps& h) { return check_node(vs, q, d.premises[i], child(path, i), h); };
  auto same = [&](const View& a, const View& b) { return a == b; };

  if (r == "Vatom") {
    if (auto e = shape(K::Atom, "an atom")) return *e;
    if (auto e = arity(0)) return *e;
    for (const auto& ax : vs.axioms())
      if (ax.atom == p.atom() && same(ax.pre, d.pre) && same(ax.post, d.post)) return {};
    return bad(path, "{" + vs.format(d.pre) + "} " + p.atom().label() + " {" + vs.format(d.post) + "} is not an axiom");
  }
  if (r == "Vskip") {
    if (auto e = shape(K::Skip, "skip")) return *e;
    if (auto e = arity(0)) return *e;
    if (!same(d.pre, d.post)) return bad(path, "Vskip needs equal pre- and postview");
    return {};
  }
  if (r == "Vseq") {
    if (auto e = shape(K::Seq, "a sequence")) return *e;
    if (auto e = arity(2)) return *e;
    if (!same(d.premises[0].pre, d.pre) || !same(d.premises[0].post, d.premises[1].pre) ||
        !same(d.premises[1].post, d.post))
      return bad(path, "Vseq premises do not chain");
    if (auto s = sub(p.left(), 0, hyps); !s.ok) return s;
    return sub(p.right(), 1, hyps);
  }
  if (r == "Vchoice") {
    if (auto e = shape(K::Choice, "a choice")) return *e;
    if (auto e = arity(p.kids().size())) return *e;
    for (std::size_t i = 0; i < n; ++i) {
      if (!same(d.premises[i].pre, d.pre) || !same(d.premises[i].post, d.post))
        return bad(child(path, i), "Vchoice branch views differ from the conclusion");
      if (auto s = sub(p.kids()[i], i, hyps); !s.ok) return s;
    }
    return {};
  }
  if (r == "Viter") {
    if (auto e = shape(K::Star, "an iteration")) return *e;
    if (auto e = arity(1)) return *e;
    if (!same(d.pre, d.post) || !same(d.premises[0].pre, d.pre) || !same(d.premises[0].post, d.pre))
      return bad(path, "Viter needs one invariant view throughout");
    return sub(p.body(), 0, hyps);
  }
  if (r == "Vcons") {
    if (auto e = arity(1)) return *e;
    if (!vs.preceq(d.pre, d.premises[0].pre)) return bad(path, "Vcons: preview is not below the premise's");
    if (!vs.preceq(d.premises[0].post, d.post)) return bad(path, "Vcons: premise's postview is not below");
    return sub(p, 0, hyps);
  }
  if (r == "Vdisj") {
    std::vector<View> pres;
    for (std::size_t i = 0; i < n; ++i) {
      if (!same(d.premises[i].post, d.post)) return bad(child(path, i), "Vdisj premises must share the postview");
      pres.push_back(d.premises[i].pre);
    }
    if (!same(vs.join(pres), d.pre)) return bad(path, "Vdisj: preview is not the join of the premises'");
    for (std::size_t i = 0; i < n; ++i)
      if (auto s = sub(p, i, hyps); !s.ok) return s;
    return {};
  }
  if (r == "Vframe") {
    if (auto e = arity(1)) return *e;
    if (!d.frame) return bad(path, "Vframe needs a frame view");
    if (!same(d.pre, vs.compose(d.premises[0].pre, *d.frame)) || !same(d.post, vs.compose(d.premises[0].post, *d.frame)))
      return bad(path, "Vframe: views are not the premise's composed with the frame");
    return sub(p, 0, hyps);
  }
  if (r == "Vconc") {
    if (auto e = shape(K::Par, "a parallel composition")) return *e;
    if (auto e = arity(2)) return *e;
    if (!same(d.pre, vs.compose(d.premises[0].pre, d.premises[1].pre)) ||
        !same(d.post, vs.compose(d.premises[0].post, d.premises[1].post)))
      return bad(path, "Vconc: views are not the composition of the threads'");
    if (auto s = sub(p.left(), 0, hyps); !s.ok) return s;
    return sub(p.right(), 1, hyps);
  }
  if (r == "Vrec") {
    if (auto e = shape(K::Rec, "a recursion")) return *e;
    if (auto e = arity(1)) return *e;
    if (!same(d.premises[0].pre, d.pre) || !same(d.premises[0].post, d.post))
      return bad(path, "Vrec: body views differ from the conclusion");
    Hyps h = hyps;
    h[p.name()] = {d.pre, d.post};
    return sub(p.body(), 0, h);
  }
  if (r == "Vhyp") {
    if (auto e = shape(K::Var, "a recursion variable")) return *e;
    if (auto e = arity(0)) return *e;
    auto it = hyps.find(p.name());
    if (it == hyps.end()) return bad(path, "no hypothesis for " + p.name());
    if (!same(it->second.first, d.pre) || !same(it->second.second, d.post))
      return bad(path, "views differ from the hypothesis for " + p.name());
    return {};
  }
  return bad(path, "unknown rule " + r);
}

}  // namespace

DerivationReport check_derivation(const ViewStructure& vs, const Prog& p, const Derivation& d) {
  return check_node(vs, p, d, "", {});
}

// ---------------------------------------------------------------------------
// Consistency oracle

ConsistencyReport consistency_oracle(const ViewStructure& vs, const View& v, const Prog& p, const View& v2,
                                     const ConsistencyOptions& opts) {
  ConsistencyReport rep;
  const Bits post = vs.erase_bits(v2);
  const auto c = prog::compile(p, opts.word_bound, opts.kahn.unroll_bound);
  const auto len = prog::max_word_length(p);
  if (c.completeness == prog::Completeness::truncated || !len || *len > opts.word_bound) rep.truncated = true;
  auto record = [&](const char* reading, State s, const StateSet& outs) {
    for (State t : outs)
      if (!post.test(t.index)) rep.violations.push_back({reading, s, t});
  };
  for (State s : vs.erase(v)) {
    ++rep.checked_states;
    const auto kr = opsem::kahn_eval(p, s, opts.kahn);
    rep.truncated = rep.truncated || kr.truncated;
    record("kahn", s, kr.states);
    record("sem", s, opsem::sem_cmd(c.command, s));
    const auto ps = opsem::plotkin_star(p, s, opts.depth);
    rep.truncated = rep.truncated || ps.truncated;
    record("plotkin*", s, ps.finals);
  }
  return rep;
}

}  // namespace tracelang::views
