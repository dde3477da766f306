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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tracelang/cli/report.hpp"
#include "tracelang/error.hpp"

using namespace tracelang;

int main(int argc, char** argv) {
  CLI::App app{"tracelang: run, step and check programs over finite state spaces"};
  app.require_subcommand(1);
  std::string config_path;
  bool as_json = false;
  std::optional<std::size_t> depth, unroll, word_bound;
  std::optional<std::string> views, suite;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config,-c", config_path, "configuration file");
    if (needs_config) opt->required();
    sub->add_flag("--json", as_json, "emit JSON");
    sub->add_option("--depth", depth, "step depth for plotkin_star");
    sub->add_option("--unroll", unroll, "recursion unrolling bound");
    sub->add_option("--word-bound", word_bound, "word length bound");
    sub->add_option("--views", views, "views instantiation")->check(CLI::IsMember({"powerset", "separation"}));
  };
  auto* run = app.add_subcommand("run", "big-step outcomes from every initial state");
  auto* steps = app.add_subcommand("steps", "small-step transition listing");
  auto* check = app.add_subcommand("check", "decide the triple {pre} program {post}");
  auto* laws = app.add_subcommand("laws", "run the property suites");
  auto* cons = app.add_subcommand("consistency", "cross-check {pre} program {post} operationally");
  for (auto* s : {run, steps, check, cons}) add_common(s, true);
  add_common(laws, false);
  laws->add_option("--suite", suite, "a single suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    cli::RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "tracelang: cannot read " << config_path << "\n";
        return 3;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      cfg = cli::parse_config(ss.str());
    }
    if (depth) cfg.depth = *depth;
    if (unroll) cfg.unroll = *unroll;
    if (word_bound) cfg.word_bound = *word_bound;
    if (views) cfg.views = *cli::views_from_name(*views);
    if (as_json) cfg.output = cli::OutputMode::json;

    cli::Report rep;
    if (*run)
      rep = cli::run(cfg);
    else if (*steps)
      rep = cli::steps(cfg);
    else if (*check)
      rep = cli::check(cfg);
    else if (*laws)
      rep = cli::laws(cfg, suite);
    else
      rep = cli::consistency(cfg);
    std::cout << (cfg.output == cli::OutputMode::json ? cli::render_json(rep) : cli::render_text(rep));
    return cli::exit_code(rep);
  } catch (const ParseError& e) {
    std::cerr << (config_path.empty() ? "" : config_path + ":") << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "tracelang: " << e.what() << "\n";
    return 3;
  }
}
