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

#ifndef TRACELANG_LAWS_HPP
#define TRACELANG_LAWS_HPP

// Property suites: the algebraic laws, the abstract and operational calculi,
// the views calculi and the fixpoint facts, each checked on random or
// exhaustively enumerated instances against independent brute-force checks.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace tracelang::laws {

struct LawResult {
  std::string suite;
  std::string law;
  std::size_t instances = 0;
  /// Instances whose premise held (all of them for unconditional laws).
  std::size_t premise_held = 0;
  std::size_t violations = 0;
  /// The instance space was enumerated completely.
  bool exhaustive = false;
  /// The law is a negative fact ("; is not commutative"); it passes when a
  /// counterexample was found.
  bool refutation = false;
  std::string counterexample;

  bool ok() const { return refutation ? !counterexample.empty() : violations == 0; }
};

struct SuiteReport {
  std::string suite;
  std::vector<LawResult> laws;
  double seconds = 0;

  bool passed() const;
  const LawResult* find(const std::string& law) const;
  /// Fewest premise-holding instances over the non-refutation laws.
  std::size_t min_premise_held() const;
};

struct LawOptions {
  std::uint64_t seed = 1;
  /// Per law of the algebra suite.
  std::size_t algebra_instances = 500;
  /// Per rule of the abstract calculus suite.
  std::size_t calculus_instances = 200;
  /// Random commands per space in the lemma battery.
  std::size_t lemma_commands = 100;
  /// Per rule of the deductive suite.
  std::size_t deductive_instances = 100;
  /// Random P per bound in the fixpoint suite.
  std::size_t fixpoint_samples = 100;
};

SuiteReport algebra_suite(const LawOptions& opts = {});
SuiteReport calculus_suite(const LawOptions& opts = {});
SuiteReport lemma_suite(const LawOptions& opts = {});
SuiteReport views_suite(const LawOptions& opts = {});
SuiteReport deductive_suite(const LawOptions& opts = {});
SuiteReport fixpoint_suite(const LawOptions& opts = {});

/// algebra, calculus, lemmas, views, deductive, fixpoint
const std::vector<std::string>& suite_names();
/// Throws Error on an unknown name.
SuiteReport run_suite(const std::string& name, const LawOptions& opts = {});

}  // namespace tracelang::laws

#endif  // TRACELANG_LAWS_HPP
