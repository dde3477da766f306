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

#ifndef TRACELANG_VIEWS_HPP
#define TRACELANG_VIEWS_HPP

// Views over a finite state space. Every view is a set of basis elements
// (states for the powerset instantiation, partial stores for the separation
// one), so entailment is ⊆, join is ∪ and composition lifts a partial
// composition of basis elements. Erasure is the union of per-element
// erasures, which makes it a join-homomorphism by construction; the
// interface checks still test it.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tracelang/bits.hpp"
#include "tracelang/opsem.hpp"
#include "tracelang/prog.hpp"
#include "tracelang/trace.hpp"

namespace tracelang::views {

using prog::AtomSeq;
using prog::Command;
using prog::Prog;
using trace::Atom;
using trace::Description;
using trace::State;
using trace::StateSet;
using trace::StateSpace;

using View = Bits;

struct Axiom {
  View pre;
  Atom atom;
  View post;
};

class ViewStructure {
 public:
  enum class Kind { powerset, separation };
  using Order = std::function<bool(const View&, const View&)>;

  /// Basis = states. Throws CapExceeded if |Σ| > max_basis.
  static ViewStructure powerset(const StateSpace& space, std::size_t max_basis = 256);
  /// Basis = partial stores. Throws CapExceeded if their number exceeds max_basis.
  static ViewStructure separation(const StateSpace& space, std::size_t max_basis = 1024);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const StateSpace& space() const { return space_; }
  std::size_t basis_size() const { return labels_.size(); }
  const std::string& element_label(std::size_t i) const { return labels_[i]; }

  View bottom() const { return View(basis_size()); }
  View top() const;
  View unit() const { return unit_; }
  View element(std::size_t i) const;
  View from_elements(const std::vector<std::size_t>& elems) const;

  View join(const View& a, const View& b) const { return a | b; }
  View join(const std::vector<View>& vs) const;
  View meet(const View& a, const View& b) const { return a & b; }
  View meet(const std::vector<View>& vs) const;
  bool entails(const View& a, const View& b) const { return a.subset_of(b); }
  bool preceq(const View& a, const View& b) const { return preceq_(a, b); }
  /// The preorder is a separate field; both shipped instantiations use ⊆.
  void set_preceq(Order order) { preceq_ = std::move(order); }

  std::optional<std::size_t> compose_elements(std::size_t i, std::size_t j) const;
  View compose(const View& a, const View& b) const;
  /// v ∗ {j} for one basis element j.
  View compose_element(const View& a, std::size_t j) const;

  StateSet erase(const View& v) const;
  /// Erasure as a bitset over state indices.
  Bits erase_bits(const View& v) const;
  const Bits& erase_element(std::size_t i) const { return erase_[i]; }

  const std::vector<Axiom>& axioms() const { return axioms_; }
  void add_axiom(Axiom ax) { axioms_.push_back(std::move(ax)); }
  void clear_axioms() { axioms_.clear(); }

  /// The carrier, for exhaustive checks. Throws CapExceeded above 2^16 views.
  std::vector<View> all_views() const;
  bool carrier_at_most(std::size_t n) const;

  /// Powerset: the view {σ | σ ∈ s}.
  View from_states(const StateSet& s) const;
  /// Separation: the basis element for a partial store given as
  /// (variable index, value) pairs. nullopt for out-of-domain values.
  std::optional<std::size_t> store_element(const std::vector<std::pair<std::size_t, int>>& store) const;
  /// Separation: owned (variable, value) pairs of a basis element.
  std::vector<std::pair<std::size_t, int>> store_of(std::size_t element) const;

  /// Parseable textual form: "false", or a disjunction separated by " or ".
  std::string format(const View& v) const;

 private:
  ViewStructure() = default;
  void finish();

  Kind kind_ = Kind::powerset;
  std::string name_;
  StateSpace space_;
  std::vector<std::string> labels_;
  std::vector<std::int32_t> table_;  // basis × basis, -1 when undefined
  std::vector<Bits> erase_;
  View unit_;
  Order preceq_;
  std::vector<Axiom> axioms_;
  std::vector<std::size_t> radix_;  // separation: |D_x| + 1 per variable
};

/// Separation: for each store owning exactly the atom's footprint, the axiom
/// from that store to the footprint projections of its images. Powerset:
/// ({σ}, a, a(σ)) whenever a(σ) ⊆ {σ}.
std::vector<Axiom> generate_axioms(const ViewStructure& vs, const Atom& a);
void add_generated_axioms(ViewStructure& vs, const std::vector<Atom>& atoms);

struct PropertyResult {
  std::string name;
  bool passed = true;
  bool exhaustive = true;
  std::size_t instances = 0;
  std::string counterexample;
};

struct StructureReport {
  std::vector<PropertyResult> properties;
  bool all_passed() const;
  const PropertyResult* find(const std::string& name) const;
};

/// Quantifiers run over the whole carrier when it has at most
/// `exhaustive_limit` views and over `samples` random views otherwise.
StructureReport check_structure(const ViewStructure& vs, std::uint64_t seed = 1, std::size_t samples = 200,
                                std::size_t exhaustive_limit = 64);

/// Axiom soundness over singleton frames; on failure names the frame.
std::optional<std::string> axiom_counterexample(const ViewStructure& vs, const Axiom& ax);
/// The same check over every view of the carrier.
bool axiom_sound_full(const ViewStructure& vs, const Axiom& ax);

// Basic triples, decided on erasures.
bool btriple(const ViewStructure& vs, const View& v, const Description& p, const View& v2);
bool btriple_states(const Description& p, const Bits& pre, const Bits& post);
/// On ⟨C⟩, computed relationally.
bool btriple_cmd(const ViewStructure& vs, const View& v, const Command& c, const View& v2);
bool btriple_atom(const ViewStructure& vs, const View& v, const Atom& a, const View& v2);

// Framing triples, over singleton frames.
bool ftriple(const ViewStructure& vs, const View& v, const Description& p, const View& v2);
bool ftriple_cmd(const ViewStructure& vs, const View& v, const Command& c, const View& v2);
bool ftriple_atom(const ViewStructure& vs, const View& v, const Atom& a, const View& v2);
bool ftriple_skip(const ViewStructure& vs, const View& v, const View& v2);
/// Over every view of the carrier; for the frame-reduction tests.
bool ftriple_full(const ViewStructure& vs, const View& v, const Description& p, const View& v2);

enum class Verdict { holds, fails, unknown };
const char* verdict_name(Verdict v);

struct TripleResult {
  Verdict verdict = Verdict::unknown;
  /// Human-readable reason; for "fails" it names the concrete witness.
  std::string witness;
  std::optional<AtomSeq> failing_word;
  std::optional<std::size_t> failing_element;
};

/// The weakest view from which the sequence is derivable with postview v2:
/// the join of all basis elements b with astriple({b}, as, v2).
View astriple_pre(const ViewStructure& vs, const AtomSeq& as, const View& v2);
TripleResult astriple(const ViewStructure& vs, const View& v, const AtomSeq& as, const View& v2);
/// For every atom sequence of C.
TripleResult vtriple(const ViewStructure& vs, const View& v, const Command& c, const View& v2);

struct ProgSearchOptions {
  /// Limit on distinct residual programs explored.
  std::size_t node_cap = 20000;
  /// Limit on distinct views tracked per residual.
  std::size_t view_cap = 4096;
};

/// vtriple on the full, possibly infinite, command of p. Explores residual
/// programs through milner_steps; "unknown" when a cap is hit.
TripleResult vtriple_prog(const ViewStructure& vs, const View& v, const Prog& p, const View& v2,
                          const ProgSearchOptions& opts = {});

/// A proof tree. `rule` is one of Vatom, Vskip, Vseq, Vchoice, Viter,
/// Vcons, Vdisj, Vframe, Vconc, Vrec, Vhyp. Vhyp closes a recursion
/// variable against the hypothesis of the enclosing Vrec.
struct Derivation {
  std::string rule;
  View pre;
  View post;
  std::optional<View> frame;
  std::vector<Derivation> premises;
};

struct DerivationReport {
  bool ok = true;
  /// Child indices from the root, e.g. "0.1".
  std::string path;
  std::string reason;
};

DerivationReport check_derivation(const ViewStructure& vs, const Prog& p, const Derivation& d);

struct Violation {
  std::string reading;  // "kahn", "sem" or "plotkin*"
  State from;
  State to;
};

struct ConsistencyOptions {
  opsem::KahnOptions kahn;
  std::size_t depth = 64;
  std::size_t word_bound = 8;
};

struct ConsistencyReport {
  std::size_t checked_states = 0;
  std::vector<Violation> violations;
  /// Some reading was cut off by a bound, so "no violation" is only up to it.
  bool truncated = false;
  bool consistent() const { return violations.empty(); }
};

/// Runs p from every state of ⌊v⌋ under the Kahn evaluator, the relational
/// meaning of the compiled command and the Plotkin closure, and reports every
/// final state outside ⌊v′⌋.
ConsistencyReport consistency_oracle(const ViewStructure& vs, const View& v, const Prog& p, const View& v2,
                                     const ConsistencyOptions& opts = {});

}  // namespace tracelang::views

#endif  // TRACELANG_VIEWS_HPP
