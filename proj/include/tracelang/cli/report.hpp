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

#ifndef TRACELANG_CLI_REPORT_HPP
#define TRACELANG_CLI_REPORT_HPP

// Drivers behind the command-line subcommands and their reports.
//
// Every report serializes to {command, config_echo, verdict, witnesses[],
// truncated}. States are objects mapping variable names to values, with
// keys in sorted order.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tracelang/cli/config.hpp"

namespace tracelang::cli {

using json = nlohmann::json;
using StateMap = std::map<std::string, int>;

StateMap state_map(const trace::StateSpace& space, trace::State s);

/// kahn_eval from one initial state.
struct Outcome {
  StateMap initial;
  std::vector<StateMap> finals;
  bool truncated = false;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct RunResult {
  std::vector<Outcome> outcomes;
  bool truncated() const;
  friend bool operator==(const RunResult&, const RunResult&) = default;
};

struct StepsConfiguration {
  std::string program;
  StateMap state;
  friend bool operator==(const StepsConfiguration&, const StepsConfiguration&) = default;
};

struct StepsTransition {
  std::size_t from = 0;
  std::string action;
  std::size_t to = 0;
  friend bool operator==(const StepsTransition&, const StepsTransition&) = default;
};

/// plotkin_star from one initial state; configurations are numbered in
/// discovery order.
struct StepsRun {
  StateMap initial;
  std::vector<StepsConfiguration> configurations;
  std::vector<StepsTransition> transitions;
  std::vector<StateMap> finals;
  bool truncated = false;
  friend bool operator==(const StepsRun&, const StepsRun&) = default;
};

struct StepsResult {
  std::vector<StepsRun> runs;
  bool truncated() const;
  friend bool operator==(const StepsResult&, const StepsResult&) = default;
};

json to_json(const StateMap& s);
StateMap state_map_from_json(const json& j);
json to_json(const RunResult& r);
RunResult run_result_from_json(const json& witnesses);
json to_json(const StepsResult& r);
StepsResult steps_result_from_json(const json& witnesses);

struct Report {
  std::string command;
  json config_echo;
  /// holds | fails | unknown for check and consistency, pass | fail for
  /// laws, ok | truncated for run and steps.
  std::string verdict;
  json witnesses = json::array();
  bool truncated = false;
  friend bool operator==(const Report&, const Report&) = default;
};

json to_json(const Report& r);
Report report_from_json(const json& j);

std::string render_json(const Report& r);
std::string render_text(const Report& r);

/// 0 holds/pass/ok, 1 fails, 2 unknown/truncated.
int exit_code(const Report& r);

json config_echo(const RunConfig& cfg);

RunResult run_program(const RunConfig& cfg, const Elaborated& e);
StepsResult steps_program(const RunConfig& cfg, const Elaborated& e);

Report run(const RunConfig& cfg);
Report steps(const RunConfig& cfg);
/// vtriple_prog, plus check_derivation when the config has a proof. An
/// accepted proof settles an "unknown" search as "holds"; a rejected proof
/// makes the verdict "fails" and names the offending node.
Report check(const RunConfig& cfg);
/// Every suite, or just `suite`.
Report laws(const RunConfig& cfg, const std::optional<std::string>& suite = std::nullopt);
Report consistency(const RunConfig& cfg);

}  // namespace tracelang::cli

#endif  // TRACELANG_CLI_REPORT_HPP
