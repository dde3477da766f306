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

#include "tracelang/recursion.hpp"

#include <algorithm>

#include "tracelang/opsem.hpp"

namespace tracelang::recursion {

using trace::Atom;
using trace::State;

fixpoint::MonotoneFn<Atom> rec_function(const Prog& rec, std::size_t word_bound) {
  if (rec.kind() != Prog::Kind::Rec) throw Error("rec_function: not a recursion");
  return {rec.name(), prog::to_fn(rec.body(), word_bound)};
}

namespace {

// {w | a·w ∈ c}
Command quotient(const Command& c, const Atom& a) {
  Command out(c.bound());
  for (const auto& w : c)
    if (!w.empty() && w.front() == a) out.insert(prog::AtomSeq(w.begin() + 1, w.end()));
  return out;
}

void tally(RuleCheck& r, bool premise, bool conclusion, const std::string& what) {
  ++r.instances;
  if (!premise) return;
  ++r.premise_held;
  if (!conclusion) {
    ++r.violations;
    if (r.counterexample.empty()) r.counterexample = what;
  }
}

}  // namespace

std::vector<RuleCheck> check_recursion_rules(const ViewStructure& vs, const Prog& rec, const View& v, const View& v2,
                                             const Command& hp, const Command& hr, const RecursionOptions& opts) {
  const std::size_t n = opts.word_bound;
  const auto f = rec_function(rec, n);
  const auto fix = fixpoint::lfp_bounded(f, n, opts.max_rounds);
  const Command& lfp = fix.value;
  const Command flfp = f(lfp);
  const auto atoms = prog::atoms_of(rec);
  const auto& space = vs.space();

  std::vector<prog::AtomSeq> pool;
  if (!atoms.empty())
    for (const auto& w : lang::top(atoms, n)) pool.push_back(w);
  const auto family = sample_family(f, n, opts.max_rounds, pool, opts.samples, opts.seed);

  std::vector<RuleCheck> out;
  out.push_back(check_rec_rule<Atom>("Hrec", f, family, lfp,
                                     [&](const Command& q) { return opsem::hoare_abstract(hp, q, hr); }));
  out.push_back(check_rec_rule<Atom>("Brec", f, family, lfp,
                                     [&](const Command& q) { return views::btriple_cmd(vs, v, q, v2); }));
  out.push_back(check_rec_rule<Atom>("Frec", f, family, lfp,
                                     [&](const Command& q) { return views::ftriple_cmd(vs, v, q, v2); }));
  out.push_back(check_rec_rule<Atom>("Vrec", f, family, lfp, [&](const Command& q) {
    return views::vtriple(vs, v, q, v2).verdict == views::Verdict::holds;
  }));
  if (!fix.converged)
    for (auto& r : out) {
      ++r.violations;
      r.counterexample = "lfp f did not converge within the round limit";
    }

  const opsem::OpSemConfig cfg{atoms};
  const auto dl = prog::denote(lfp), df = prog::denote(flfp);
  std::vector<Command> residuals{flfp};
  for (const auto& a : atoms) residuals.push_back(quotient(flfp, a));
  std::vector<trace::Description> dres;
  for (const auto& c : residuals) dres.push_back(prog::denote(c));
  const auto states = space.all_states();
  const auto unrolled = prog::unroll(rec);

  RuleCheck pc{"PCrec", 0, 0, 0, {}};
  for (State s : states)
    for (State s2 : states)
      for (std::size_t i = 0; i < dres.size(); ++i)
        tally(pc, opsem::plotkin_desc(df, s, dres[i], s2, cfg), opsem::plotkin_desc(dl, s, dres[i], s2, cfg),
              "step of f(lfp f) from " + space.format(s) + " not matched by lfp f");
  out.push_back(pc);

  RuleCheck pc2{"PCrec'", 0, 0, 0, {}};
  for (State s : states) {
    tally(pc2, true, opsem::plotkin_desc(dl, s, df, s, cfg), "lfp f does not step to f(lfp f)");
    bool found = false;
    for (const auto& st : opsem::plotkin_steps(rec, s)) found = found || (st.residual == unrolled && st.next == s);
    tally(pc2, true, found, "rec node does not step to its unrolling at " + space.format(s));
  }
  out.push_back(pc2);

  std::vector<Command> actions{lang::skip<Atom>(n)};
  for (const auto& a : atoms) actions.push_back(lang::singleton<Atom>(n, {a}));
  RuleCheck mc{"MCrec", 0, 0, 0, {}};
  for (const auto& q : actions)
    for (const auto& r : residuals)
      tally(mc, opsem::milner_abstract(flfp, q, r, actions), opsem::milner_abstract(lfp, q, r, actions),
            "Milner step of f(lfp f) not matched by lfp f");
  out.push_back(mc);

  RuleCheck mc2{"MCrec'", 0, 0, 0, {}};
  tally(mc2, true, opsem::milner_abstract(lfp, actions[0], flfp, actions), "lfp f does not skip to f(lfp f)");
  {
    bool found = false;
    for (const auto& st : opsem::milner_steps(rec)) found = found || (!st.action && st.residual == unrolled);
    tally(mc2, true, found, "rec node has no skip step to its unrolling");
  }
  out.push_back(mc2);

  RuleCheck kc{"KCrec", 0, 0, 0, {}};
  opsem::KahnOptions ko{n, opts.max_rounds};
  for (State s : states) {
    for (State s2 : states)
      tally(kc, opsem::kahn_desc(df, s, s2), opsem::kahn_desc(dl, s, s2),
            "outcome " + space.format(s2) + " of f(lfp f) missing from lfp f");
    const auto a = opsem::kahn_eval(unrolled, s, ko), b = opsem::kahn_eval(rec, s, ko);
    tally(kc, true, std::includes(b.states.begin(), b.states.end(), a.states.begin(), a.states.end()),
          "evaluator: unrolling has an outcome the rec node lacks from " + space.format(s));
  }
  out.push_back(kc);
  return out;
}

}  // namespace tracelang::recursion
