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

#ifndef TRACELANG_CLI_CONFIG_HPP
#define TRACELANG_CLI_CONFIG_HPP

// Line-oriented run configuration. The grammar is documented in README.md.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tracelang/cli/parse.hpp"
#include "tracelang/prog.hpp"
#include "tracelang/trace.hpp"
#include "tracelang/views.hpp"

namespace tracelang::cli {

enum class OutputMode { text, json };

struct VarDecl {
  std::string name;
  int lo = 0;
  int hi = 0;
  std::size_t line = 0;
};

/// A piece of source text together with where it starts in the config file.
struct Located {
  std::string text;
  SourcePos at;
};

struct AxiomDecl {
  Located pre;
  Located stmt;
  Located post;
};

/// One line of a proof tree: "Rule PRE => POST [frame VIEW]"; children are
/// the more deeply indented lines below it.
struct ProofNode {
  std::string rule;
  Located pre;
  Located post;
  std::optional<Located> frame;
  std::vector<ProofNode> premises;
};

struct RunConfig {
  std::vector<VarDecl> vars;
  /// Each init line is a partial assignment; the initial states are those
  /// matching some line. No init line means every state.
  std::vector<std::vector<std::pair<std::string, int>>> inits;
  std::size_t word_bound = 8;
  std::size_t unroll = 16;
  std::size_t depth = 64;
  std::size_t search_cap = 20000;
  std::uint64_t seed = 1;
  views::ViewStructure::Kind views = views::ViewStructure::Kind::separation;
  OutputMode output = OutputMode::text;
  bool auto_axioms = true;
  std::vector<AxiomDecl> axioms;
  std::optional<Located> program;
  std::optional<Located> pre;
  std::optional<Located> post;
  std::optional<ProofNode> proof;
};

/// Throws ParseError with the config file's line and column.
RunConfig parse_config(const std::string& text);

/// Bounds ≥ 1 and unique variable names; throws ElaborationError.
void validate(const RunConfig& cfg);

struct Elaborated {
  trace::StateSpace space;
  std::vector<trace::State> initial;
  std::optional<prog::Prog> program;
  /// Carries the declared and generated axioms.
  std::optional<views::ViewStructure> vs;
  std::optional<views::View> pre;
  std::optional<views::View> post;
  std::optional<views::Derivation> proof;
};

/// Validates, then parses the embedded program, views, axioms and proof.
/// An explicit axiom that is unsound under some frame is an ElaborationError.
Elaborated elaborate(const RunConfig& cfg);

const char* views_name(views::ViewStructure::Kind k);
std::optional<views::ViewStructure::Kind> views_from_name(const std::string& s);

}  // namespace tracelang::cli

#endif  // TRACELANG_CLI_CONFIG_HPP
