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

#include "tracelang/cli/report.hpp"

#include <sstream>

#include "tracelang/error.hpp"
#include "tracelang/laws.hpp"
#include "tracelang/opsem.hpp"

namespace tracelang::cli {

StateMap state_map(const trace::StateSpace& space, trace::State s) {
  StateMap m;
  for (const auto& [k, v] : space.to_map(s)) m[k] = v;
  return m;
}

bool RunResult::truncated() const {
  for (const auto& o : outcomes)
    if (o.truncated) return true;
  return false;
}

bool StepsResult::truncated() const {
  for (const auto& r : runs)
    if (r.truncated) return true;
  return false;
}

json to_json(const StateMap& s) {
  json j = json::object();
  for (const auto& [k, v] : s) j[k] = v;
  return j;
}

StateMap state_map_from_json(const json& j) {
  StateMap m;
  for (const auto& [k, v] : j.items()) m[k] = v.get<int>();
  return m;
}

namespace {

json states_json(const std::vector<StateMap>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(to_json(s));
  return a;
}

std::vector<StateMap> states_from_json(const json& a) {
  std::vector<StateMap> out;
  for (const auto& s : a) out.push_back(state_map_from_json(s));
  return out;
}

std::string format_state(const StateMap& s) {
  std::string out;
  for (const auto& [k, v] : s) out += (out.empty() ? "" : " ") + k + "=" + std::to_string(v);
  return out;
}

std::string format_states(const json& a) {
  std::string out = "{";
  bool first = true;
  for (const auto& s : a) {
    out += (first ? "" : ", ") + std::string("[") + format_state(state_map_from_json(s)) + "]";
    first = false;
  }
  return out + "}";
}

const Elaborated& need(const Elaborated& e, bool program, bool triple, const char* command) {
  if (program && !e.program) throw ElaborationError(std::string(command) + " needs a program");
  if (triple && (!e.pre || !e.post)) throw ElaborationError(std::string(command) + " needs pre and post views");
  return e;
}

}  // namespace

json to_json(const RunResult& r) {
  json a = json::array();
  for (const auto& o : r.outcomes)
    a.push_back({{"initial", to_json(o.initial)}, {"finals", states_json(o.finals)}, {"truncated", o.truncated}});
  return a;
}

RunResult run_result_from_json(const json& witnesses) {
  RunResult r;
  for (const auto& w : witnesses)
    r.outcomes.push_back(
        {state_map_from_json(w.at("initial")), states_from_json(w.at("finals")), w.at("truncated").get<bool>()});
  return r;
}

json to_json(const StepsResult& r) {
  json a = json::array();
  for (const auto& run : r.runs) {
    json configs = json::array(), edges = json::array();
    for (const auto& c : run.configurations) configs.push_back({{"program", c.program}, {"state", to_json(c.state)}});
    for (const auto& t : run.transitions) edges.push_back({{"from", t.from}, {"action", t.action}, {"to", t.to}});
    a.push_back({{"initial", to_json(run.initial)},
                 {"configurations", configs},
                 {"transitions", edges},
                 {"finals", states_json(run.finals)},
                 {"truncated", run.truncated}});
  }
  return a;
}

StepsResult steps_result_from_json(const json& witnesses) {
  StepsResult r;
  for (const auto& w : witnesses) {
    StepsRun run;
    run.initial = state_map_from_json(w.at("initial"));
    for (const auto& c : w.at("configurations"))
      run.configurations.push_back({c.at("program").get<std::string>(), state_map_from_json(c.at("state"))});
    for (const auto& t : w.at("transitions"))
      run.transitions.push_back(
          {t.at("from").get<std::size_t>(), t.at("action").get<std::string>(), t.at("to").get<std::size_t>()});
    run.finals = states_from_json(w.at("finals"));
    run.truncated = w.at("truncated").get<bool>();
    r.runs.push_back(std::move(run));
  }
  return r;
}

json to_json(const Report& r) {
  return {{"command", r.command},
          {"config_echo", r.config_echo},
          {"verdict", r.verdict},
          {"witnesses", r.witnesses},
          {"truncated", r.truncated}};
}

Report report_from_json(const json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.config_echo = j.at("config_echo");
  r.verdict = j.at("verdict").get<std::string>();
  r.witnesses = j.at("witnesses");
  r.truncated = j.at("truncated").get<bool>();
  return r;
}

std::string render_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

std::string render_text(const Report& r) {
  std::ostringstream os;
  const json& w = r.witnesses;
  if (r.command == "run") {
    for (const auto& o : w)
      os << "from [" << format_state(state_map_from_json(o["initial"])) << "]: " << format_states(o["finals"])
         << (o["truncated"].get<bool>() ? " (truncated)" : "") << "\n";
  } else if (r.command == "steps") {
    for (const auto& run : w) {
      os << "from [" << format_state(state_map_from_json(run["initial"])) << "]"
         << (run["truncated"].get<bool>() ? " (truncated)" : "") << "\n";
      std::size_t i = 0;
      for (const auto& c : run["configurations"])
        os << "  [" << i++ << "] " << c["program"].get<std::string>() << " @ "
           << format_state(state_map_from_json(c["state"])) << "\n";
      for (const auto& t : run["transitions"])
        os << "  " << t["from"].get<std::size_t>() << " --[" << t["action"].get<std::string>() << "]--> "
           << t["to"].get<std::size_t>() << "\n";
      os << "  finals: " << format_states(run["finals"]) << "\n";
    }
  } else if (r.command == "check") {
    for (const auto& x : w) {
      if (x["kind"] == "search") {
        os << "search: " << x["verdict"].get<std::string>();
        if (x.contains("detail")) os << ": " << x["detail"].get<std::string>();
        os << "\n";
      } else {
        os << "proof: " << (x["accepted"].get<bool>() ? "accepted" : "rejected");
        if (!x["accepted"].get<bool>())
          os << " at node '" << x["path"].get<std::string>() << "': " << x["reason"].get<std::string>();
        os << "\n";
      }
    }
  } else if (r.command == "laws") {
    for (const auto& x : w) {
      os << (x["pass"].get<bool>() ? "PASS " : "FAIL ") << x["suite"].get<std::string>() << ": "
         << x["law"].get<std::string>() << " (" << x["premise_held"].get<std::size_t>() << "/"
         << x["instances"].get<std::size_t>() << " instances";
      if (x["exhaustive"].get<bool>()) os << ", exhaustive";
      os << ")";
      if (!x["pass"].get<bool>() && !x["counterexample"].get<std::string>().empty())
        os << "\n    " << x["counterexample"].get<std::string>();
      os << "\n";
    }
  } else if (r.command == "consistency") {
    for (const auto& x : w)
      os << x["reading"].get<std::string>() << ": [" << format_state(state_map_from_json(x["from"])) << "] -> ["
         << format_state(state_map_from_json(x["to"])) << "] leaves the postview\n";
  }
  if (r.truncated) os << "note: a bound was reached; results are exact only up to it\n";
  os << "verdict: " << r.verdict << "\n";
  return os.str();
}

int exit_code(const Report& r) {
  if (r.verdict == "holds" || r.verdict == "pass" || r.verdict == "ok") return 0;
  if (r.verdict == "fails" || r.verdict == "fail") return 1;
  return 2;
}

json config_echo(const RunConfig& cfg) {
  json vars = json::array(), inits = json::array(), axioms = json::array();
  for (const auto& v : cfg.vars) vars.push_back({{"name", v.name}, {"lo", v.lo}, {"hi", v.hi}});
  for (const auto& line : cfg.inits) {
    StateMap m(line.begin(), line.end());
    inits.push_back(to_json(m));
  }
  for (const auto& a : cfg.axioms) axioms.push_back(a.pre.text + " => " + a.stmt.text + " => " + a.post.text);
  json j = {{"vars", vars},
            {"init", inits},
            {"word_bound", cfg.word_bound},
            {"unroll", cfg.unroll},
            {"depth", cfg.depth},
            {"search_cap", cfg.search_cap},
            {"seed", cfg.seed},
            {"views", views_name(cfg.views)},
            {"axioms", cfg.auto_axioms ? "auto" : "none"},
            {"axiom", axioms},
            {"proof", cfg.proof.has_value()}};
  j["program"] = cfg.program ? json(cfg.program->text) : json(nullptr);
  j["pre"] = cfg.pre ? json(cfg.pre->text) : json(nullptr);
  j["post"] = cfg.post ? json(cfg.post->text) : json(nullptr);
  return j;
}

RunResult run_program(const RunConfig& cfg, const Elaborated& e) {
  need(e, true, false, "run");
  RunResult r;
  const opsem::KahnOptions ko{cfg.word_bound, cfg.unroll};
  for (auto s : e.initial) {
    auto k = opsem::kahn_eval(*e.program, s, ko);
    Outcome o{state_map(e.space, s), {}, k.truncated};
    for (auto t : k.states) o.finals.push_back(state_map(e.space, t));
    r.outcomes.push_back(std::move(o));
  }
  return r;
}

StepsResult steps_program(const RunConfig& cfg, const Elaborated& e) {
  need(e, true, false, "steps");
  StepsResult r;
  for (auto s : e.initial) {
    auto ps = opsem::plotkin_star(*e.program, s, cfg.depth);
    StepsRun run;
    run.initial = state_map(e.space, s);
    std::map<opsem::Configuration, std::size_t> index;
    for (const auto& c : ps.reached) {
      index.emplace(c, index.size());
      run.configurations.push_back({c.prog.to_string(), state_map(e.space, c.state)});
    }
    for (const auto& t : ps.transitions)
      run.transitions.push_back({index.at(t.from), opsem::format_action(t.action), index.at(t.to)});
    for (auto t : ps.finals) run.finals.push_back(state_map(e.space, t));
    run.truncated = ps.truncated;
    r.runs.push_back(std::move(run));
  }
  return r;
}

Report run(const RunConfig& cfg) {
  const auto e = elaborate(cfg);
  const auto r = run_program(cfg, e);
  return {"run", config_echo(cfg), r.truncated() ? "truncated" : "ok", to_json(r), r.truncated()};
}

Report steps(const RunConfig& cfg) {
  const auto e = elaborate(cfg);
  const auto r = steps_program(cfg, e);
  return {"steps", config_echo(cfg), r.truncated() ? "truncated" : "ok", to_json(r), r.truncated()};
}

Report check(const RunConfig& cfg) {
  const auto e = elaborate(cfg);
  need(e, true, true, "check");
  const auto& vs = *e.vs;
  views::ProgSearchOptions so;
  so.node_cap = cfg.search_cap;
  const auto tr = views::vtriple_prog(vs, *e.pre, *e.program, *e.post, so);
  Report rep{"check", config_echo(cfg), views::verdict_name(tr.verdict), json::array(), false};
  json search = {{"kind", "search"}, {"verdict", views::verdict_name(tr.verdict)}};
  if (!tr.witness.empty()) search["detail"] = tr.witness;
  rep.witnesses.push_back(search);
  if (e.proof) {
    views::DerivationReport dr;
    if (e.proof->pre != *e.pre || e.proof->post != *e.post) {
      dr.ok = false;
      dr.reason = "the root's views differ from pre and post";
    } else {
      dr = views::check_derivation(vs, *e.program, *e.proof);
    }
    rep.witnesses.push_back({{"kind", "proof"}, {"accepted", dr.ok}, {"path", dr.path}, {"reason", dr.reason}});
    if (!dr.ok)
      rep.verdict = "fails";
    else if (tr.verdict == views::Verdict::unknown)
      rep.verdict = "holds";
  }
  rep.truncated = tr.verdict == views::Verdict::unknown;
  return rep;
}

Report laws(const RunConfig& cfg, const std::optional<std::string>& suite) {
  laws::LawOptions lo;
  lo.seed = cfg.seed;
  std::vector<laws::SuiteReport> reports;
  if (suite) {
    reports.push_back(laws::run_suite(*suite, lo));
  } else {
    for (const auto& name : laws::suite_names()) reports.push_back(laws::run_suite(name, lo));
  }
  Report rep{"laws", config_echo(cfg), "pass", json::array(), false};
  for (const auto& s : reports)
    for (const auto& l : s.laws) {
      rep.witnesses.push_back({{"suite", l.suite},
                               {"law", l.law},
                               {"instances", l.instances},
                               {"premise_held", l.premise_held},
                               {"violations", l.violations},
                               {"exhaustive", l.exhaustive},
                               {"pass", l.ok()},
                               {"counterexample", l.counterexample}});
      if (!l.ok()) rep.verdict = "fail";
    }
  return rep;
}

Report consistency(const RunConfig& cfg) {
  const auto e = elaborate(cfg);
  need(e, true, true, "consistency");
  views::ConsistencyOptions co;
  co.kahn = {cfg.word_bound, cfg.unroll};
  co.depth = cfg.depth;
  co.word_bound = cfg.word_bound;
  const auto cr = views::consistency_oracle(*e.vs, *e.pre, *e.program, *e.post, co);
  Report rep{"consistency", config_echo(cfg), "holds", json::array(), cr.truncated};
  for (const auto& v : cr.violations)
    rep.witnesses.push_back(
        {{"reading", v.reading}, {"from", to_json(state_map(e.space, v.from))}, {"to", to_json(state_map(e.space, v.to))}});
  if (!cr.consistent())
    rep.verdict = "fails";
  else if (cr.truncated)
    rep.verdict = "unknown";
  return rep;
}

}  // namespace tracelang::cli
