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

#include "tracelang/trace.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "tracelang/error.hpp"

namespace tracelang::trace {

// ---------------------------------------------------------------------------
// StateSpace

StateSpace::StateSpace(std::vector<Variable> vars) : vars_(std::move(vars)) {
  std::set<std::string> names;
  std::ostringstream sig;
  for (auto& v : vars_) {
    if (v.name.empty()) throw Error("state space: empty variable name");
    if (!names.insert(v.name).second) throw Error("state space: duplicate variable '" + v.name + "'");
    std::sort(v.domain.begin(), v.domain.end());
    v.domain.erase(std::unique(v.domain.begin(), v.domain.end()), v.domain.end());
    if (v.domain.empty()) throw Error("state space: variable '" + v.name + "' has an empty domain");
    sig << v.name << '{';
    for (int d : v.domain) sig << d << ',';
    sig << '}';
  }
  strides_.assign(vars_.size(), 1);
  size_ = 1;
  for (std::size_t i = vars_.size(); i-- > 0;) {
    strides_[i] = size_;
    size_ *= vars_[i].domain.size();
    if (size_ > (1u << 24)) throw CapExceeded("state space too large");
  }
  signature_ = sig.str();
}

StateSpace StateSpace::ranges(const std::vector<std::tuple<std::string, int, int>>& decls) {
  std::vector<Variable> vars;
  for (const auto& [name, lo, hi] : decls) {
    if (lo > hi) throw Error("state space: empty range for '" + name + "'");
    Variable v{name, {}};
    for (int x = lo; x <= hi; ++x) v.domain.push_back(x);
    vars.push_back(std::move(v));
  }
  return StateSpace(std::move(vars));
}

std::optional<std::size_t> StateSpace::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  return std::nullopt;
}

int StateSpace::value(State s, std::size_t var) const {
  const auto digit = (s.index / strides_[var]) % vars_[var].domain.size();
  return vars_[var].domain[digit];
}

std::vector<int> StateSpace::values(State s) const {
  std::vector<int> out(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) out[i] = value(s, i);
  return out;
}

std::optional<State> StateSpace::state_of(std::span<const int> values) const {
  if (values.size() != vars_.size()) return std::nullopt;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto& dom = vars_[i].domain;
    auto it = std::lower_bound(dom.begin(), dom.end(), values[i]);
    if (it == dom.end() || *it != values[i]) return std::nullopt;
    idx += static_cast<std::size_t>(it - dom.begin()) * strides_[i];
  }
  return State{static_cast<std::uint32_t>(idx)};
}

std::optional<State> StateSpace::with_value(State s, std::size_t var, long long value) const {
  const auto& dom = vars_[var].domain;
  auto it = std::lower_bound(dom.begin(), dom.end(), value);
  if (it == dom.end() || *it != value) return std::nullopt;
  const std::size_t old_digit = (s.index / strides_[var]) % dom.size();
  const std::size_t new_digit = static_cast<std::size_t>(it - dom.begin());
  return State{static_cast<std::uint32_t>(s.index - old_digit * strides_[var] + new_digit * strides_[var])};
}

std::vector<State> StateSpace::all_states() const {
  std::vector<State> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = State{static_cast<std::uint32_t>(i)};
  return out;
}

StateSet StateSpace::all_state_set() const {
  auto v = all_states();
  return StateSet(v.begin(), v.end());
}

std::string StateSpace::format(State s) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) os << ' ';
    os << vars_[i].name << '=' << value(s, i);
  }
  return os.str();
}

std::vector<std::pair<std::string, int>> StateSpace::to_map(State s) const {
  std::vector<std::pair<std::string, int>> out;
  for (std::size_t i = 0; i < vars_.size(); ++i) out.emplace_back(vars_[i].name, value(s, i));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Expr

struct Expr::Node {
  Op op;
  long long value = 0;
  std::size_t var = 0;
  std::string name;
  std::vector<Expr> kids;
};

Expr Expr::constant(long long v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = v;
  return Expr(std::move(n));
}

Expr Expr::variable(std::size_t index, std::string name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->var = index;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::unary(Op op, Expr e) {
  if (op != Op::Neg && op != Op::Not) throw Error("Expr::unary: not a unary operator");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->kids.push_back(std::move(e));
  return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  if (op == Op::Const || op == Op::Var || op == Op::Neg || op == Op::Not)
    throw Error("Expr::binary: not a binary operator");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->kids.push_back(std::move(lhs));
  n->kids.push_back(std::move(rhs));
  return Expr(std::move(n));
}

Expr::Op Expr::op() const { return node_->op; }

std::optional<long long> Expr::eval(std::span<const int> values) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Const:
      return n.value;
    case Op::Var:
      return values[n.var];
    case Op::Neg: {
      auto v = n.kids[0].eval(values);
      if (!v) return std::nullopt;
      return -*v;
    }
    case Op::Not: {
      auto v = n.kids[0].eval(values);
      if (!v) return std::nullopt;
      return *v == 0 ? 1 : 0;
    }
    default:
      break;
  }
  auto a = n.kids[0].eval(values);
  if (!a) return std::nullopt;
  // Short-circuit so that "x != 0 and 1 / x > 0" is total.
  if (n.op == Op::And && *a == 0) return 0;
  if (n.op == Op::Or && *a != 0) return 1;
  auto b = n.kids[1].eval(values);
  if (!b) return std::nullopt;
  switch (n.op) {
    case Op::Add: return *a + *b;
    case Op::Sub: return *a - *b;
    case Op::Mul: return *a * *b;
    case Op::Div:
      if (*b == 0) return std::nullopt;
      return *a / *b;
    case Op::Mod:
      if (*b == 0) return std::nullopt;
      return *a % *b;
    case Op::Eq: return *a == *b;
    case Op::Ne: return *a != *b;
    case Op::Lt: return *a < *b;
    case Op::Le: return *a <= *b;
    case Op::Gt: return *a > *b;
    case Op::Ge: return *a >= *b;
    case Op::And: return *b != 0;
    case Op::Or: return *b != 0;
    default: break;
  }
  return std::nullopt;
}

std::optional<long long> Expr::eval(const StateSpace& space, State s) const {
  const auto vals = space.values(s);
  return eval(std::span<const int>(vals));
}

std::set<std::size_t> Expr::vars() const {
  std::set<std::size_t> out;
  if (node_->op == Op::Var) out.insert(node_->var);
  for (const auto& k : node_->kids) {
    auto sub = k.vars();
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

namespace {

const char* op_text(Expr::Op op) {
  switch (op) {
    case Expr::Op::Add: return "+";
    case Expr::Op::Sub: return "-";
    case Expr::Op::Mul: return "*";
    case Expr::Op::Div: return "/";
    case Expr::Op::Mod: return "%";
    case Expr::Op::Eq: return "==";
    case Expr::Op::Ne: return "!=";
    case Expr::Op::Lt: return "<";
    case Expr::Op::Le: return "<=";
    case Expr::Op::Gt: return ">";
    case Expr::Op::Ge: return ">=";
    case Expr::Op::And: return "and";
    case Expr::Op::Or: return "or";
    default: return "?";
  }
}

}  // namespace

std::string Expr::to_string() const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Const: return std::to_string(n.value);
    case Op::Var: return n.name;
    case Op::Neg: return "-" + n.kids[0].to_string();
    case Op::Not: return "not " + n.kids[0].to_string();
    default: break;
  }
  auto wrap = [](const Expr& e) {
    const auto op = e.op();
    return (op == Op::Const || op == Op::Var) ? e.to_string() : "(" + e.to_string() + ")";
  };
  return wrap(n.kids[0]) + " " + op_text(n.op) + " " + wrap(n.kids[1]);
}

Expr negate(const Expr& cond) { return Expr::unary(Expr::Op::Not, cond); }

// ---------------------------------------------------------------------------
// Atoms

namespace detail {

struct AtomData {
  std::uint64_t id;
  std::vector<Step> rel;
  std::string label;
  std::vector<std::vector<State>> succ;
};

}  // namespace detail

namespace {

struct AtomTable {
  std::mutex mu;
  std::map<std::pair<std::string, std::vector<Step>>, std::shared_ptr<const detail::AtomData>> by_rel;
  std::uint64_t next_id = 0;
};

AtomTable& atom_table() {
  static AtomTable table;
  return table;
}

}  // namespace

std::uint64_t Atom::id() const { return data_->id; }
const std::vector<Step>& Atom::rel() const { return data_->rel; }
const std::string& Atom::label() const { return data_->label; }
const std::vector<State>& Atom::image(State s) const { return data_->succ.at(s.index); }
std::size_t Atom::space_size() const { return data_->succ.size(); }

Atom intern_atom(const StateSpace& space, std::set<Step> rel, std::string label) {
  std::vector<Step> sorted(rel.begin(), rel.end());
  for (const auto& st : sorted)
    if (st.from.index >= space.size() || st.to.index >= space.size())
      throw Error("atom relation mentions a state outside the space");
  auto& table = atom_table();
  std::lock_guard<std::mutex> lock(table.mu);
  auto key = std::make_pair(space.signature(), sorted);
  if (auto it = table.by_rel.find(key); it != table.by_rel.end()) return Atom(it->second);
  auto data = std::make_shared<detail::AtomData>();
  data->id = table.next_id++;
  data->rel = std::move(sorted);
  data->label = std::move(label);
  data->succ.resize(space.size());
  for (const auto& st : data->rel) data->succ[st.from.index].push_back(st.to);
  std::shared_ptr<const detail::AtomData> frozen = data;
  table.by_rel.emplace(std::move(key), frozen);
  return Atom(frozen);
}

Atom mk_atom_assign(const StateSpace& space, const std::string& var, const Expr& e) {
  return mk_atom_block(space, {{var, e}});
}

Atom mk_atom_assume(const StateSpace& space, const Expr& cond) {
  std::set<Step> rel;
  for (State s : space.all_states()) {
    auto v = cond.eval(space, s);
    if (v && *v != 0) rel.insert(Step{s, s});
  }
  return intern_atom(space, std::move(rel), "assume " + cond.to_string());
}

Atom mk_atom_block(const StateSpace& space, const std::vector<std::pair<std::string, Expr>>& assigns) {
  std::vector<std::size_t> targets;
  std::string label;
  for (const auto& [var, e] : assigns) {
    auto idx = space.var_index(var);
    if (!idx) throw ElaborationError("unknown variable '" + var + "'");
    for (auto r : e.vars())
      if (r >= space.var_count()) throw ElaborationError("expression refers to an unknown variable");
    targets.push_back(*idx);
    if (!label.empty()) label += ", ";
    label += var + " := " + e.to_string();
  }
  if (assigns.size() > 1) label = "atomic { " + label + " }";
  std::set<Step> rel;
  for (State s : space.all_states()) {
    std::optional<State> cur = s;
    for (std::size_t i = 0; i < assigns.size() && cur; ++i) {
      auto v = assigns[i].second.eval(space, *cur);
      cur = v ? space.with_value(*cur, targets[i], *v) : std::nullopt;
    }
    if (cur) rel.insert(Step{s, *cur});
  }
  return intern_atom(space, std::move(rel), label);
}

std::vector<std::size_t> footprint(const StateSpace& space, const Atom& a) {
  std::vector<std::size_t> out;
  const auto states = space.all_states();
  for (std::size_t var = 0; var < space.var_count(); ++var) {
    bool relevant = false;
    for (State s : states) {
      for (State t : a.image(s))
        if (space.value(s, var) != space.value(t, var)) relevant = true;
      if (relevant) break;
      // Independence: shifting var in the input shifts the outputs alike.
      for (int c : space.vars()[var].domain) {
        State s2 = *space.with_value(s, var, c);
        std::set<State> shifted;
        for (State t : a.image(s)) shifted.insert(*space.with_value(t, var, c));
        const auto& img2 = a.image(s2);
        if (shifted != std::set<State>(img2.begin(), img2.end())) {
          relevant = true;
          break;
        }
      }
      if (relevant) break;
    }
    if (relevant) out.push_back(var);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Traces

bool is_consistent(std::span<const Step> t) {
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i - 1].to != t[i].from) return false;
  return true;
}

Description ic_traces_ending_in(const StateSpace& space, State s, std::size_t k) {
  Description out(k);
  const auto states = space.all_states();
  // Consistent traces of length L ending in s are determined by the chain
  // s_0, ..., s_{L-1}, s; grow chains backwards from s.
  std::vector<Trace> layer;
  for (State a : states) layer.push_back(Trace{Step{a, s}});
  for (std::size_t len = 1; len <= k; ++len) {
    for (const auto& t : layer) out.insert(t);
    if (len == k) break;
    std::vector<Trace> next;
    next.reserve(layer.size() * states.size());
    for (const auto& t : layer) {
      for (State a : states) {
        Trace u;
        u.reserve(t.size() + 1);
        u.push_back(Step{a, t.front().from});
        u.insert(u.end(), t.begin(), t.end());
        next.push_back(std::move(u));
      }
    }
    layer = std::move(next);
  }
  return out;
}

bool is_inconsistent_closed(const StateSpace& space, const Description& p, std::size_t sample_cap) {
  const std::size_t n = p.bound();
  if (n < 2) return true;
  const auto states = space.all_states();
  std::vector<Trace> prefixes;
  for (State a : states)
    for (State b : states)
      for (State c : states)
        for (State d : states) {
          if (b == c) continue;
          if (prefixes.size() >= sample_cap) break;
          prefixes.push_back(Trace{Step{a, b}, Step{c, d}});
        }
  for (const auto& t : prefixes) {
    for (const auto& u : p) {
      if (t.size() + u.size() > n) continue;
      Trace w = t;
      w.insert(w.end(), u.begin(), u.end());
      if (is_consistent(w)) return false;
    }
  }
  return true;
}

StateSet atom_apply(const Atom& a, State s) {
  const auto& img = a.image(s);
  return StateSet(img.begin(), img.end());
}

StateSet atom_apply_set(const Atom& a, const StateSet& s) {
  StateSet out;
  for (State x : s) {
    const auto& img = a.image(x);
    out.insert(img.begin(), img.end());
  }
  return out;
}

Description atom_description(const Atom& a, std::size_t bound) {
  Description out(bound);
  if (bound == 0) return out;
  for (const auto& st : a.rel()) out.insert(Trace{st});
  return out;
}

std::string format_step(const StateSpace& space, const Step& st) {
  return "(" + space.format(st.from) + " -> " + space.format(st.to) + ")";
}

std::string format_trace(const StateSpace& space, const Trace& t) {
  return lang::format_word(t, [&](const Step& st) { return format_step(space, st); }, " ");
}

std::string format_states(const StateSpace& space, const StateSet& s) {
  std::string out = "{";
  bool first = true;
  for (State x : s) {
    if (!first) out += ", ";
    first = false;
    out += space.format(x);
  }
  return out + "}";
}

}  // namespace tracelang::trace
