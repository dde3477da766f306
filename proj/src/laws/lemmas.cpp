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
#include <map>

#include "common.hpp"
#include "tracelang/bits.hpp"
#include "tracelang/opsem.hpp"
#include "tracelang/views.hpp"

namespace tracelang::laws {

namespace {

using namespace detail;
using prog::Command;
using trace::Description;
using trace::State;
using trace::StateSet;
using views::View;
using views::ViewStructure;

const char* const kSuite = "lemmas";

// Every consistent trace of length 1..k, indexed, so that T(v) is a bit set.
class TraceUniverse {
 public:
  TraceUniverse(const trace::StateSpace& sp, std::size_t k) {
    const auto states = sp.all_states();
    std::vector<trace::Trace> layer;
    for (State a : states)
      for (State b : states) layer.push_back({{a, b}});
    for (std::size_t len = 1; len <= k; ++len) {
      for (const auto& t : layer) traces_.push_back(t);
      if (len == k) break;
      std::vector<trace::Trace> next;
      for (const auto& t : layer)
        for (State b : states) {
          auto u = t;
          u.push_back({t.back().to, b});
          next.push_back(std::move(u));
        }
      layer = std::move(next);
    }
  }

  /// T(S): the traces ending in S.
  Bits of(const StateSet& ends) const {
    Bits out(traces_.size());
    for (std::size_t i = 0; i < traces_.size(); ++i)
      if (ends.count(traces_[i].back().to)) out.set(i);
    return out;
  }

  /// Literal basic triple: every consistent extension t·u of t ∈ T(pre) by
  /// u ∈ P ends in post.
  bool btriple(const StateSet& pre, const Description& p, const StateSet& post) const {
    for (const auto& t : traces_) {
      if (!pre.count(t.back().to)) continue;
      for (const auto& u : p) {
        auto tu = t;
        tu.insert(tu.end(), u.begin(), u.end());
        if (trace::is_consistent(tu) && !post.count(tu.back().to)) return false;
      }
    }
    return true;
  }

 private:
  std::vector<trace::Trace> traces_;
};

std::vector<View> view_sample(const ViewStructure& vs, Rng& rng, std::size_t limit, bool& exhaustive) {
  exhaustive = vs.basis_size() <= 9;
  if (exhaustive) return vs.all_views();
  std::vector<View> out{vs.bottom(), vs.top()};
  while (out.size() < limit) {
    View v = vs.bottom();
    for (std::size_t i = 0; i < vs.basis_size(); ++i)
      if (coin(rng, 25)) v.set(i);
    out.push_back(v);
  }
  return out;
}

Command quotient(const Command& c, const trace::Atom& a) {
  Command out(c.bound());
  for (const auto& w : c)
    if (!w.empty() && w.front() == a) out.insert(prog::AtomSeq(w.begin() + 1, w.end()));
  return out;
}

std::string where(const Space& s) { return "on " + s.name + ": "; }

}  // namespace

SuiteReport lemma_suite(const LawOptions& opts) {
  Stopwatch clock;
  SuiteReport rep;
  rep.suite = kSuite;
  Rng rng(opts.seed + 202);
  const auto spaces = battery_spaces();
  auto make = [](const std::string& law) {
    LawResult r;
    r.suite = kSuite;
    r.law = law;
    r.exhaustive = true;
    return r;
  };

  // Erasure order and T-set order; atom triples through images.
  LawResult order = make("erasure order = T-set order");
  LawResult atom = make("atom triple = image containment");
  for (const auto& s : spaces) {
    const std::size_t k = s.space.size() <= 4 ? 2 : 1;
    const TraceUniverse tu(s.space, k);
    for (auto vs : {ViewStructure::powerset(s.space), ViewStructure::separation(s.space)}) {
      bool exhaustive = true;
      const auto vsample = view_sample(vs, rng, 300, exhaustive);
      order.exhaustive = order.exhaustive && exhaustive;
      std::vector<StateSet> er;
      std::vector<Bits> ts;
      for (const auto& v : vsample) {
        er.push_back(vs.erase(v));
        ts.push_back(tu.of(er.back()));
      }
      for (std::size_t i = 0; i < vsample.size(); ++i)
        for (std::size_t j = 0; j < vsample.size(); ++j) {
          const bool e = std::includes(er[j].begin(), er[j].end(), er[i].begin(), er[i].end());
          record(order, true, e == ts[i].subset_of(ts[j]), [&] {
            return where(s) + vs.name() + " views " + vs.format(vsample[i]) + " and " + vs.format(vsample[j]);
          });
        }
      // Exhaustive pairs when the carrier is tiny, sampled pairs otherwise.
      const bool all_pairs = vsample.size() <= 16;
      atom.exhaustive = atom.exhaustive && all_pairs && exhaustive;
      const std::size_t pairs = all_pairs ? vsample.size() * vsample.size() : 1500;
      for (const auto& a : s.atoms) {
        const auto d = trace::atom_description(a, 1);
        for (std::size_t q = 0; q < pairs; ++q) {
          const std::size_t i = all_pairs ? q / vsample.size() : pick(rng, vsample.size());
          const std::size_t j = all_pairs ? q % vsample.size() : pick(rng, vsample.size());
          const auto img = trace::atom_apply_set(a, er[i]);
          const bool image = std::includes(er[j].begin(), er[j].end(), img.begin(), img.end());
          record(atom, true, tu.btriple(er[i], d, er[j]) == image && views::btriple_atom(vs, vsample[i], a, vsample[j]) == image,
                 [&] { return where(s) + a.label() + " from " + vs.format(vsample[i]) + " to " + vs.format(vsample[j]); });
        }
      }
    }
  }
  rep.laws.push_back(order);
  rep.laws.push_back(atom);

  LawResult plotkin_char = make("Plotkin = Milner step then Kahn (descriptions)");
  LawResult plotkin_char_cmd = make("Plotkin = Milner step then Kahn (commands)");
  LawResult history_kahn = make("Kahn endpoint form = prefix forms");
  LawResult history_plotkin = make("Plotkin endpoint form = prefix forms");
  LawResult transfer = make("command steps are description steps");
  LawResult approx_desc = make("Plotkin* to skip implies Kahn (descriptions)");
  LawResult approx_cmd = make("Plotkin* to skip implies Kahn (commands)");
  LawResult sem_kahn = make("sem = Kahn outcomes");
  LawResult hom_atom = make("<a> = a");
  LawResult hom_skip = make("<skip> = skip");
  LawResult hom_seq = make("<C;C'> = <C>;<C'>");
  LawResult hom_union = make("<U Y> = U <Y>");
  LawResult hom_star = make("<C*> = <C>*");
  LawResult hom_par = make("<C||C'> = <C>||<C'>");

  for (const auto& s : spaces) {
    const auto& sp = s.space;
    const auto states = sp.all_states();
    const std::size_t n = states.size() <= 4 ? 3 : 2;
    const opsem::OpSemConfig cfg{s.atoms};
    const auto actions_m = cfg.actions(n + 1);

    for (const auto& a : s.atoms)
      record(hom_atom, true, lang::eq(prog::denote(lang::singleton<prog::Atom>(n, {a})), trace::atom_description(a, n)),
             [&] { return where(s) + a.label(); });
    record(hom_skip, true, lang::eq(prog::denote(lang::skip<prog::Atom>(n)), lang::skip<trace::Step>(n)),
           [&] { return where(s); });

    for (std::size_t ci = 0; ci < opts.lemma_commands; ++ci) {
      const Command c = random_command(rng, s.atoms, n, 3, n - 1);
      const Command c2 = random_command(rng, s.atoms, n, 3, n - 1);
      const auto dc = prog::denote(c), dc2 = prog::denote(c2);
      const auto why_c = [&] { return where(s) + "C = " + prog::format_command(c) + ", C' = " + prog::format_command(c2); };

      record(hom_seq, true, lang::eq(prog::denote(lang::concat(c, c2)), lang::concat(dc, dc2)), why_c);
      record(hom_union, true,
             lang::eq(prog::denote(lang::big_union<prog::Atom>({c, c2}, n)), lang::big_union<trace::Step>({dc, dc2}, n)),
             why_c);
      record(hom_star, true, lang::eq(prog::denote(lang::star(c)), lang::star(dc)), why_c);
      record(hom_par, true, lang::eq(prog::denote(lang::shuffle(c, c2)), lang::shuffle(dc, dc2)), why_c);

      // Residual candidates: quotients by each atom, C itself, skip, C'.
      std::vector<Command> residuals{c, lang::skip<prog::Atom>(n), c2};
      for (const auto& a : s.atoms) residuals.push_back(quotient(c, a));
      std::vector<Description> dres;
      for (const auto& r : residuals) dres.push_back(prog::denote(r).with_bound(n + 1));
      const auto dcm = dc.with_bound(n + 1);

      for (State x : states)
        for (State y : states) {
          const auto outcome = opsem::sem_cmd(c, x);
          record(sem_kahn, true, opsem::kahn_desc(dc, x, y) == (outcome.count(y) != 0),
                 [&] { return where(s) + prog::format_command(c) + " from " + sp.format(x); });
          for (std::size_t k = 1; k <= 2; ++k) {
            const bool e = opsem::kahn_desc(dc, x, y);
            record(history_kahn, true,
                   e == opsem::kahn_desc_exists(sp, dc, x, y, k) && e == opsem::kahn_desc_forall(sp, dc, x, y, k),
                   [&] { return where(s) + prog::format_command(c) + " " + sp.format(x) + " to " + sp.format(y); });
          }
          for (std::size_t ri = 0; ri < residuals.size(); ++ri) {
            const auto& dr = dres[ri];
            const bool literal = opsem::plotkin_desc_exists(sp, dc, x, dr, y, cfg, 1);
            bool via = false;
            for (const auto& q : actions_m)
              via = via || (opsem::milner_abstract(dcm, q, dr, actions_m) && opsem::kahn_desc(q, x, y));
            auto why = [&] {
              return where(s) + prog::format_command(c) + " to " + prog::format_command(residuals[ri]) + ", " +
                     sp.format(x) + " to " + sp.format(y);
            };
            record(plotkin_char, true, literal == via, why);
            record(history_plotkin, true,
                   literal == opsem::plotkin_desc(dcm, x, dr, y, cfg) &&
                       literal == opsem::plotkin_desc_forall(sp, dc, x, dr, y, cfg, 2),
                   why);
            // Command level: the hidden action is skip or an atom, executed
            // relationally.
            bool via_cmd = false;
            std::vector<Command> acts{lang::skip<prog::Atom>(n)};
            for (const auto& a : s.atoms) acts.push_back(lang::singleton<prog::Atom>(n, {a}));
            for (const auto& q : acts) {
              if (via_cmd) break;
              const auto dq = prog::denote(q).with_bound(n + 1);
              via_cmd = opsem::milner_abstract(dcm, dq, dr, actions_m) && opsem::sem_cmd(q, x).count(y);
            }
            record(plotkin_char_cmd, true, literal == via_cmd, why);
          }
        }

      // Runs of small random programs.
      const auto p = random_prog(rng, s.atoms, 3);
      const auto why_p = [&] { return where(s) + p.to_string(); };
      for (State x : states) {
        const auto run = opsem::plotkin_star(p, x, 24);
        auto den = [&](const prog::Prog& q) { return prog::denote(prog::compile(q, n, 8).command); };
        std::map<prog::Prog, Description> memo;
        auto den_m = [&](const prog::Prog& q) -> const Description& {
          auto it = memo.find(q);
          if (it == memo.end()) it = memo.emplace(q, den(q)).first;
          return it->second;
        };
        for (const auto& t : run.transitions)
          record(transfer, true,
                 opsem::plotkin_desc(den_m(t.from.prog), t.from.state, den_m(t.to.prog), t.to.state, cfg),
                 [&] { return why_p() + ": " + t.from.prog.to_string() + " to " + t.to.prog.to_string(); });
        const auto kahn = opsem::kahn_eval(p, x, {8, 8});
        const auto& dp = den_m(p);
        for (State y : run.finals) {
          record(approx_cmd, !kahn.truncated, kahn.states.count(y) != 0, [&] { return why_p() + " from " + sp.format(x); });
          // Words longer than the bound are cut off, so only runs that fit
          // are comparable at description level.
          record(approx_desc, prog::max_word_length(p) && *prog::max_word_length(p) <= n,
                 opsem::kahn_desc(dp, x, y), [&] { return why_p() + " from " + sp.format(x); });
        }
      }
    }
  }
  for (auto* r : {&plotkin_char, &plotkin_char_cmd, &history_kahn, &history_plotkin, &transfer, &approx_desc,
                  &approx_cmd, &sem_kahn, &hom_atom, &hom_skip, &hom_seq, &hom_union, &hom_star, &hom_par})
    rep.laws.push_back(*r);
  rep.seconds = clock.seconds();
  return rep;
}

}  // namespace tracelang::laws
