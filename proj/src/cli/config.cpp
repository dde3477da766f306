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

#include "tracelang/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

#include "tracelang/error.hpp"

namespace tracelang::cli {

namespace {

struct Line {
  std::size_t number;
  std::string raw;
  std::size_t indent;  // leading blanks
  bool blank;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  std::size_t start = 0, number = 1;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string raw = text.substr(start, end - start);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::size_t indent = 0;
    while (indent < raw.size() && (raw[indent] == ' ' || raw[indent] == '\t')) ++indent;
    const bool blank = indent == raw.size() || raw[indent] == '#';
    out.push_back({number++, raw, indent, blank});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

std::string strip_comment(const std::string& s) {
  auto h = s.find('#');
  return h == std::string::npos ? s : s.substr(0, h);
}

// Trim, returning the offset of the first kept character.
std::pair<std::string, std::size_t> trim(const std::string& s, std::size_t offset = 0) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return {s.substr(b, e - b), offset + b};
}

Located located(const std::string& s, std::size_t line, std::size_t col0) {
  auto [t, off] = trim(s, col0);
  return {t, {line, off + 1}};
}

std::size_t parse_bound(const std::string& key, const std::string& v, std::size_t line, std::size_t col) {
  static const std::regex num(R"(\d{1,9})");
  if (!std::regex_match(v, num)) throw ParseError(key + " expects a non-negative integer", line, col);
  return std::stoul(v);
}

// "PRE => POST [frame VIEW]" with positions.
void split_proof_tail(const std::string& s, std::size_t line, std::size_t col0, ProofNode& n) {
  auto arrow = s.find("=>");
  if (arrow == std::string::npos) throw ParseError("expected 'PRE => POST' after the rule name", line, col0 + 1);
  n.pre = located(s.substr(0, arrow), line, col0);
  std::string rest = s.substr(arrow + 2);
  const std::size_t rest0 = col0 + arrow + 2;
  static const std::regex frame_kw(R"((^|\s)frame(\s|$))");
  std::smatch m;
  if (std::regex_search(rest, m, frame_kw)) {
    const std::size_t at = m.position(0) + m[1].length();
    n.post = located(rest.substr(0, at), line, rest0);
    n.frame = located(rest.substr(at + 5), line, rest0 + at + 5);
    if (n.frame->text.empty()) throw ParseError("expected a view after 'frame'", line, rest0 + at + 1);
  } else {
    n.post = located(rest, line, rest0);
  }
  if (n.pre.text.empty()) throw ParseError("empty preview", line, col0 + 1);
  if (n.post.text.empty()) throw ParseError("empty postview", line, rest0 + 1);
}

ProofNode proof_line(const Line& l) {
  const std::string body = strip_comment(l.raw);
  std::size_t i = l.indent;
  std::size_t j = i;
  while (j < body.size() && (std::isalnum(static_cast<unsigned char>(body[j])) || body[j] == '\'')) ++j;
  if (j == i) throw ParseError("expected a rule name", l.number, i + 1);
  ProofNode n;
  n.rule = body.substr(i, j - i);
  split_proof_tail(body.substr(j), l.number, j, n);
  return n;
}

ProofNode parse_proof(const std::vector<const Line*>& lines) {
  // Stack of (indent, node*) along the path to the last line.
  ProofNode root = proof_line(*lines.front());
  std::vector<std::pair<std::size_t, ProofNode*>> stack{{lines.front()->indent, &root}};
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& l = *lines[k];
    while (!stack.empty() && stack.back().first >= l.indent) stack.pop_back();
    if (stack.empty()) throw ParseError("a proof has a single root", l.number, l.indent + 1);
    ProofNode* parent = stack.back().second;
    parent->premises.push_back(proof_line(l));
    stack.push_back({l.indent, &parent->premises.back()});
  }
  return root;
}

std::string err_at(const SourcePos& at, const std::string& what) {
  return std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + what;
}

}  // namespace

const char* views_name(views::ViewStructure::Kind k) {
  return k == views::ViewStructure::Kind::powerset ? "powerset" : "separation";
}

std::optional<views::ViewStructure::Kind> views_from_name(const std::string& s) {
  if (s == "powerset") return views::ViewStructure::Kind::powerset;
  if (s == "separation") return views::ViewStructure::Kind::separation;
  return std::nullopt;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  const auto lines = split_lines(text);
  std::set<std::string> seen;
  static const std::set<std::string> once{"program", "pre", "post", "proof", "word_bound", "unroll", "depth",
                                          "search_cap", "seed", "views", "output", "axioms"};
  static const std::regex key_re(R"(([A-Za-z_]+)\s*:?)");
  static const std::regex var_re(R"(([A-Za-z_][A-Za-z0-9_']*)\s*:?\s*(-?\d{1,6})\s*\.\.\s*(-?\d{1,6}))");
  static const std::regex init_item(R"(\s*,?\s*([A-Za-z_][A-Za-z0-9_']*)\s*=\s*(-?\d{1,6}))");

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.blank) continue;
    if (l.indent > 0) throw ParseError("unexpected indentation", l.number, 1);
    const std::string body = strip_comment(l.raw);
    std::smatch m;
    if (!std::regex_search(body, m, key_re, std::regex_constants::match_continuous))
      throw ParseError("expected a key", l.number, 1);
    const std::string key = m[1];
    const std::size_t vcol = m.length(0);
    auto [value, voff] = trim(body.substr(vcol), vcol);
    const std::size_t col = voff + 1;
    if (once.count(key) && !seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", l.number, 1);

    // Indented continuation lines, for block keys written "key:" alone.
    auto block = [&]() {
      std::vector<const Line*> out;
      while (i + 1 < lines.size() && (lines[i + 1].blank || lines[i + 1].indent > 0)) {
        ++i;
        if (!lines[i].blank) out.push_back(&lines[i]);
      }
      return out;
    };
    auto text_value = [&]() -> Located {
      if (!value.empty()) return {value, {l.number, col}};
      auto bl = block();
      if (bl.empty()) throw ParseError("'" + key + "' needs a value", l.number, col);
      std::string joined;
      for (std::size_t n = bl.front()->number; n <= bl.back()->number; ++n) {
        if (n > bl.front()->number) joined += '\n';
        joined += lines[n - 1].raw;
      }
      return {joined, {bl.front()->number, 1}};
    };

    if (key == "var") {
      std::smatch vm;
      if (!std::regex_match(value, vm, var_re)) throw ParseError("expected 'var NAME LO..HI'", l.number, col);
      cfg.vars.push_back({vm[1], std::stoi(vm[2]), std::stoi(vm[3]), l.number});
    } else if (key == "init") {
      std::vector<std::pair<std::string, int>> assign;
      std::string rest = value;
      std::smatch im;
      while (std::regex_search(rest, im, init_item, std::regex_constants::match_continuous)) {
        assign.push_back({im[1], std::stoi(im[2])});
        rest = im.suffix();
      }
      if (!trim(rest).first.empty() || assign.empty())
        throw ParseError("expected 'init NAME=VALUE ...'", l.number, col);
      cfg.inits.push_back(std::move(assign));
    } else if (key == "word_bound") {
      cfg.word_bound = parse_bound(key, value, l.number, col);
    } else if (key == "unroll") {
      cfg.unroll = parse_bound(key, value, l.number, col);
    } else if (key == "depth") {
      cfg.depth = parse_bound(key, value, l.number, col);
    } else if (key == "search_cap") {
      cfg.search_cap = parse_bound(key, value, l.number, col);
    } else if (key == "seed") {
      cfg.seed = parse_bound(key, value, l.number, col);
    } else if (key == "views") {
      auto k = views_from_name(value);
      if (!k) throw ParseError("views must be 'separation' or 'powerset'", l.number, col);
      cfg.views = *k;
    } else if (key == "output") {
      if (value != "text" && value != "json") throw ParseError("output must be 'text' or 'json'", l.number, col);
      cfg.output = value == "json" ? OutputMode::json : OutputMode::text;
    } else if (key == "axioms") {
      if (value != "auto" && value != "none") throw ParseError("axioms must be 'auto' or 'none'", l.number, col);
      cfg.auto_axioms = value == "auto";
    } else if (key == "axiom") {
      auto a1 = value.find("=>");
      auto a2 = a1 == std::string::npos ? a1 : value.find("=>", a1 + 2);
      if (a2 == std::string::npos) throw ParseError("expected 'axiom PRE => STMT => POST'", l.number, col);
      AxiomDecl ax{located(value.substr(0, a1), l.number, voff), located(value.substr(a1 + 2, a2 - a1 - 2), l.number, voff + a1 + 2),
                   located(value.substr(a2 + 2), l.number, voff + a2 + 2)};
      cfg.axioms.push_back(std::move(ax));
    } else if (key == "program") {
      cfg.program = text_value();
    } else if (key == "pre") {
      cfg.pre = text_value();
    } else if (key == "post") {
      cfg.post = text_value();
    } else if (key == "proof") {
      if (!value.empty()) {
        Line inline_line{l.number, std::string(voff, ' ') + value, voff, false};
        cfg.proof = parse_proof({&inline_line});
      } else {
        auto bl = block();
        if (bl.empty()) throw ParseError("'proof' needs a value", l.number, col);
        cfg.proof = parse_proof(bl);
      }
    } else {
      throw ParseError("unknown key '" + key + "'", l.number, 1);
    }
  }
  return cfg;
}

void validate(const RunConfig& cfg) {
  if (cfg.vars.empty()) throw ElaborationError("no variables declared");
  std::set<std::string> names;
  for (const auto& v : cfg.vars) {
    if (!names.insert(v.name).second)
      throw ElaborationError(std::to_string(v.line) + ":1: variable '" + v.name + "' declared twice");
    if (v.lo > v.hi) throw ElaborationError(std::to_string(v.line) + ":1: empty range for '" + v.name + "'");
  }
  const std::pair<const char*, std::size_t> bounds[] = {
      {"word_bound", cfg.word_bound}, {"unroll", cfg.unroll}, {"depth", cfg.depth}, {"search_cap", cfg.search_cap}};
  for (const auto& [name, b] : bounds)
    if (b < 1) throw ElaborationError(std::string(name) + " must be at least 1");
}

namespace {

views::Derivation elaborate_proof(const ProofNode& n, const views::ViewStructure& vs) {
  views::Derivation d;
  d.rule = n.rule;
  d.pre = parse_view(n.pre.text, vs, n.pre.at);
  d.post = parse_view(n.post.text, vs, n.post.at);
  if (n.frame) d.frame = parse_view(n.frame->text, vs, n.frame->at);
  for (const auto& c : n.premises) d.premises.push_back(elaborate_proof(c, vs));
  return d;
}

}  // namespace

Elaborated elaborate(const RunConfig& cfg) {
  validate(cfg);
  Elaborated e;
  std::vector<std::tuple<std::string, int, int>> decls;
  for (const auto& v : cfg.vars) decls.emplace_back(v.name, v.lo, v.hi);
  e.space = trace::StateSpace::ranges(decls);

  std::vector<std::vector<std::pair<std::size_t, int>>> inits;
  for (const auto& line : cfg.inits) {
    std::vector<std::pair<std::size_t, int>> a;
    for (const auto& [name, val] : line) {
      auto idx = e.space.var_index(name);
      if (!idx) throw ElaborationError("init: undeclared program variable '" + name + "'");
      const auto& dom = e.space.vars()[*idx].domain;
      if (!std::binary_search(dom.begin(), dom.end(), val))
        throw ElaborationError("init: value " + std::to_string(val) + " is outside the domain of '" + name + "'");
      a.push_back({*idx, val});
    }
    inits.push_back(std::move(a));
  }
  for (auto s : e.space.all_states()) {
    bool match = inits.empty();
    for (const auto& a : inits)
      match = match || std::all_of(a.begin(), a.end(), [&](auto& kv) { return e.space.value(s, kv.first) == kv.second; });
    if (match) e.initial.push_back(s);
  }

  if (cfg.program) e.program = parse_program(cfg.program->text, e.space, cfg.program->at);

  const bool need_views = cfg.pre || cfg.post || cfg.proof || !cfg.axioms.empty();
  if (!need_views) return e;
  e.vs = cfg.views == views::ViewStructure::Kind::powerset ? views::ViewStructure::powerset(e.space)
                                                           : views::ViewStructure::separation(e.space);
  auto& vs = *e.vs;
  if (cfg.auto_axioms && e.program) views::add_generated_axioms(vs, prog::atoms_of(*e.program));
  for (const auto& ax : cfg.axioms) {
    views::Axiom a{parse_view(ax.pre.text, vs, ax.pre.at), parse_atom(ax.stmt.text, e.space, ax.stmt.at),
                   parse_view(ax.post.text, vs, ax.post.at)};
    if (auto why = views::axiom_counterexample(vs, a)) throw ElaborationError(err_at(ax.pre.at, "unsound axiom: " + *why));
    vs.add_axiom(std::move(a));
  }
  if (cfg.pre) e.pre = parse_view(cfg.pre->text, vs, cfg.pre->at);
  if (cfg.post) e.post = parse_view(cfg.post->text, vs, cfg.post->at);
  if (cfg.proof) e.proof = elaborate_proof(*cfg.proof, vs);
  return e;
}

}  // namespace tracelang::cli
