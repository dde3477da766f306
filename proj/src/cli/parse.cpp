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

#include "tracelang/cli/parse.hpp"

#include <cctype>
#include <set>
#include <vector>

#include "tracelang/error.hpp"

namespace tracelang::cli {

namespace {

using prog::Prog;
using trace::Expr;
using Op = Expr::Op;

struct Token {
  enum class Kind { Ident, Number, Sym, End };
  Kind kind;
  std::string text;
  long long value = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"skip", "assume", "atomic", "if",   "then", "else", "end",   "while", "do",
                                       "rec",  "and",    "or",     "not",  "true", "false", "in",  "emp"};
  return k;
}

const std::set<std::string>& statement_keywords() {
  static const std::set<std::string> k{"skip", "assume", "atomic", "if", "while", "rec"};
  return k;
}

std::vector<Token> tokenize(const std::string& text, SourcePos at) {
  static const char* const two[] = {":=", "||", "==", "!=", "<=", ">="};
  std::vector<Token> out;
  std::size_t line = at.line, col = at.column;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t{Token::Kind::Sym, "", 0, line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\''))
        ++j;
      t.kind = Token::Kind::Ident;
      t.text = text.substr(i, j - i);
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Token::Kind::Number;
      t.text = text.substr(i, j - i);
      if (t.text.size() > 12) throw ParseError("number too large", line, col);
      t.value = std::stoll(t.text);
      advance(j - i);
    } else {
      bool matched = false;
      for (const char* s : two)
        if (text.compare(i, 2, s) == 0) {
          t.text = s;
          advance(2);
          matched = true;
          break;
        }
      if (!matched) {
        static const std::string singles = ";+*(){},.-/%=<>!";
        if (singles.find(c) == std::string::npos)
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        t.text = std::string(1, c);
        advance(1);
      }
    }
    out.push_back(std::move(t));
  }
  out.push_back(Token{Token::Kind::End, "", 0, line, col});
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const trace::StateSpace& space, SourcePos at)
      : toks_(tokenize(text, at)), space_(space) {}

  // --- expressions ------------------------------------------------------

  Expr expr() { return or_expr(); }

  // --- statements -------------------------------------------------------

  Prog stmt() { return par(); }

  trace::Atom atom_stmt() {
    const Token& t = peek();
    if (is_ident("assume")) {
      next();
      return trace::mk_atom_assume(space_, expr());
    }
    if (is_ident("atomic")) return atomic_block();
    if (t.kind == Token::Kind::Ident && !keywords().count(t.text)) {
      auto [name, e] = assignment();
      return trace::mk_atom_assign(space_, name, e);
    }
    fail("expected an atomic statement");
  }

  // --- views ------------------------------------------------------------

  views::View view(const views::ViewStructure& vs) {
    if (vs.kind() == views::ViewStructure::Kind::powerset) {
      const Expr e = expr();
      trace::StateSet s;
      for (auto st : space_.all_states()) {
        auto v = e.eval(space_, st);
        if (v && *v != 0) s.insert(st);
      }
      return vs.from_states(s);
    }
    return sep_or(vs);
  }

  void expect_end() {
    if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "'");
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_sym(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Sym && peek(k).text == s;
  }
  bool is_ident(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Ident && peek(k).text == s;
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw ParseError(what + (t.kind == Token::Kind::End ? " at end of input" : ""), t.line, t.column);
  }
  [[noreturn]] void fail_elab(const std::string& what, const Token& t) const {
    throw ElaborationError(std::to_string(t.line) + ":" + std::to_string(t.column) + ": " + what);
  }
  void expect_sym(const char* s) {
    if (!is_sym(s)) fail(std::string("expected '") + s + "'");
    next();
  }
  void expect_ident(const char* s) {
    if (!is_ident(s)) fail(std::string("expected '") + s + "'");
    next();
  }
  bool is_var(const Token& t) const {
    return t.kind == Token::Kind::Ident && !keywords().count(t.text) && space_.var_index(t.text).has_value();
  }
  bool is_rec_var(const Token& t) const {
    if (t.kind != Token::Kind::Ident) return false;
    for (const auto& n : recs_)
      if (n == t.text) return true;
    return false;
  }

  // Can the token at offset k begin an expression operand?
  bool starts_operand(std::size_t k) const {
    const Token& t = peek(k);
    if (t.kind == Token::Kind::Number) return true;
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "not" || t.text == "true" || t.text == "false") return true;
      if (keywords().count(t.text) || is_rec_var(t)) return false;
      return !is_sym(":=", k + 1);
    }
    if (is_sym("-", k)) return true;
    if (is_sym("(", k)) return paren_holds_expr(k);
    return false;
  }

  bool paren_holds_expr(std::size_t k) const {
    int depth = 0;
    for (std::size_t i = pos_ + k; i < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.kind == Token::Kind::End) return true;
      if (t.kind == Token::Kind::Sym) {
        if (t.text == "(") ++depth;
        if (t.text == ")" && --depth == 0) return true;
        if (t.text == ":=" || t.text == ";" || t.text == "||") return false;
      }
      if (t.kind == Token::Kind::Ident && (statement_keywords().count(t.text) || is_rec_var(t))) return false;
    }
    return true;
  }

  Expr or_expr() {
    Expr e = and_expr();
    while (is_ident("or")) {
      next();
      e = Expr::binary(Op::Or, e, and_expr());
    }
    return e;
  }
  Expr and_expr() {
    Expr e = not_expr();
    while (is_ident("and")) {
      next();
      e = Expr::binary(Op::And, e, not_expr());
    }
    return e;
  }
  Expr not_expr() {
    if (is_ident("not")) {
      next();
      return Expr::unary(Op::Not, not_expr());
    }
    return cmp_expr();
  }
  Expr cmp_expr() {
    Expr e = add_expr();
    static const std::pair<const char*, Op> ops[] = {{"==", Op::Eq}, {"=", Op::Eq}, {"!=", Op::Ne}, {"<=", Op::Le},
                                                     {">=", Op::Ge}, {"<", Op::Lt}, {">", Op::Gt}};
    for (const auto& [s, op] : ops)
      if (is_sym(s)) {
        next();
        return Expr::binary(op, e, add_expr());
      }
    if (is_ident("in")) {
      next();
      expect_sym("{");
      std::optional<Expr> out;
      for (long long v : int_list()) {
        Expr eq = Expr::binary(Op::Eq, e, Expr::constant(v));
        out = out ? Expr::binary(Op::Or, *out, eq) : eq;
      }
      return out ? *out : Expr::constant(0);
    }
    return e;
  }
  Expr add_expr() {
    Expr e = mul_expr();
    for (;;) {
      if (is_sym("+") && starts_operand(1)) {
        next();
        e = Expr::binary(Op::Add, e, mul_expr());
      } else if (is_sym("-")) {
        next();
        e = Expr::binary(Op::Sub, e, mul_expr());
      } else {
        return e;
      }
    }
  }
  Expr mul_expr() {
    Expr e = unary_expr();
    for (;;) {
      if (is_sym("*") && starts_operand(1)) {
        next();
        e = Expr::binary(Op::Mul, e, unary_expr());
      } else if (is_sym("/")) {
        next();
        e = Expr::binary(Op::Div, e, unary_expr());
      } else if (is_sym("%")) {
        next();
        e = Expr::binary(Op::Mod, e, unary_expr());
      } else {
        return e;
      }
    }
  }
  Expr unary_expr() {
    if (is_sym("-")) {
      next();
      return Expr::unary(Op::Neg, unary_expr());
    }
    return primary_expr();
  }
  Expr primary_expr() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Number) {
      next();
      return Expr::constant(t.value);
    }
    if (is_ident("true") || is_ident("false")) {
      next();
      return Expr::constant(t.text == "true" ? 1 : 0);
    }
    if (is_sym("(")) {
      next();
      Expr e = expr();
      expect_sym(")");
      return e;
    }
    if (t.kind == Token::Kind::Ident && !keywords().count(t.text)) {
      auto idx = space_.var_index(t.text);
      if (!idx) fail_elab("undeclared program variable '" + t.text + "'", t);
      next();
      return Expr::variable(*idx, t.text);
    }
    fail("expected an expression");
  }

  std::vector<long long> int_list() {
    std::vector<long long> out;
    if (is_sym("}")) {
      next();
      return out;
    }
    for (;;) {
      out.push_back(signed_int());
      if (is_sym("}")) {
        next();
        return out;
      }
      expect_sym(",");
    }
  }
  long long signed_int() {
    bool neg = false;
    if (is_sym("-")) {
      next();
      neg = true;
    }
    if (peek().kind != Token::Kind::Number) fail("expected a number");
    const long long v = next().value;
    return neg ? -v : v;
  }

  std::pair<std::string, Expr> assignment() {
    const Token t = next();
    if (!space_.var_index(t.text)) fail_elab("undeclared program variable '" + t.text + "'", t);
    expect_sym(":=");
    return {t.text, expr()};
  }

  trace::Atom atomic_block() {
    expect_ident("atomic");
    expect_sym("{");
    std::vector<std::pair<std::string, Expr>> assigns;
    for (;;) {
      if (peek().kind != Token::Kind::Ident || keywords().count(peek().text)) fail("expected an assignment");
      assigns.push_back(assignment());
      if (is_sym(",") || is_sym(";")) {
        next();
        continue;
      }
      expect_sym("}");
      break;
    }
    return trace::mk_atom_block(space_, assigns);
  }

  Prog par() {
    Prog p = choice();
    while (is_sym("||")) {
      next();
      p = Prog::par(p, choice());
    }
    return p;
  }
  Prog choice() {
    Prog p = seq();
    while (is_sym("+")) {
      next();
      p = Prog::choice({p, seq()});
    }
    return p;
  }
  Prog seq() {
    Prog p = postfix();
    while (is_sym(";")) {
      next();
      p = Prog::seq(p, postfix());
    }
    return p;
  }
  Prog postfix() {
    Prog p = primary();
    while (is_sym("*")) {
      next();
      p = Prog::star(p);
    }
    return p;
  }
  Prog primary() {
    const Token t = peek();
    if (is_ident("skip")) {
      next();
      return Prog::skip();
    }
    if (is_ident("assume") || is_ident("atomic")) return Prog::atom(atom_stmt());
    if (is_ident("if")) {
      next();
      Expr c = expr();
      expect_ident("then");
      Prog a = stmt();
      Prog b = Prog::skip();
      if (is_ident("else")) {
        next();
        b = stmt();
      }
      expect_ident("end");
      return prog::if_then_else(space_, c, a, b);
    }
    if (is_ident("while")) {
      next();
      Expr c = expr();
      expect_ident("do");
      Prog body = stmt();
      expect_ident("end");
      return prog::while_loop(space_, c, body);
    }
    if (is_ident("rec")) {
      next();
      const Token name = peek();
      if (name.kind != Token::Kind::Ident || keywords().count(name.text)) fail("expected a recursion variable");
      if (space_.var_index(name.text))
        fail_elab("recursion variable '" + name.text + "' clashes with a program variable", name);
      next();
      expect_sym(".");
      recs_.push_back(name.text);
      Prog body = stmt();
      recs_.pop_back();
      return Prog::rec(name.text, body);
    }
    if (is_sym("(")) {
      next();
      Prog p = stmt();
      expect_sym(")");
      return p;
    }
    if (t.kind == Token::Kind::Ident && !keywords().count(t.text)) {
      if (is_sym(":=", 1)) {
        auto [name, e] = assignment();
        return Prog::atom(trace::mk_atom_assign(space_, name, e));
      }
      if (is_rec_var(t)) {
        next();
        return Prog::var(t.text);
      }
      if (space_.var_index(t.text)) {
        next();
        fail("expected ':=' after '" + t.text + "'");
      }
      fail_elab("unbound recursion variable '" + t.text + "'", t);
    }
    fail("expected a statement");
  }

  // Separation views.
  views::View sep_or(const views::ViewStructure& vs) {
    views::View v = sep_star(vs);
    while (is_ident("or")) {
      next();
      v = vs.join(v, sep_star(vs));
    }
    return v;
  }
  views::View sep_star(const views::ViewStructure& vs) {
    views::View v = sep_clause(vs);
    while (is_sym("*")) {
      next();
      v = vs.compose(v, sep_clause(vs));
    }
    return v;
  }
  views::View sep_clause(const views::ViewStructure& vs) {
    if (is_ident("emp")) {
      next();
      return vs.unit();
    }
    if (is_ident("true")) {
      next();
      return vs.top();
    }
    if (is_ident("false")) {
      next();
      return vs.bottom();
    }
    if (is_sym("(")) {
      next();
      auto v = sep_or(vs);
      expect_sym(")");
      return v;
    }
    const Token t = peek();
    if (t.kind != Token::Kind::Ident || keywords().count(t.text)) fail("expected a view clause");
    auto idx = space_.var_index(t.text);
    if (!idx) fail_elab("undeclared program variable '" + t.text + "'", t);
    next();
    std::vector<long long> values;
    if (is_sym("=") || is_sym("==")) {
      next();
      values.push_back(signed_int());
    } else if (is_ident("in")) {
      next();
      expect_sym("{");
      values = int_list();
    } else {
      fail("expected '=' or 'in' after '" + t.text + "'");
    }
    views::View v = vs.bottom();
    for (long long x : values) {
      auto e = vs.store_element({{*idx, static_cast<int>(x)}});
      if (!e) fail_elab("value " + std::to_string(x) + " is outside the domain of '" + t.text + "'", t);
      v |= vs.element(*e);
    }
    return v;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const trace::StateSpace& space_;
  std::vector<std::string> recs_;
};

}  // namespace

prog::Prog parse_program(const std::string& text, const trace::StateSpace& space, SourcePos at) {
  Parser p(text, space, at);
  auto out = p.stmt();
  p.expect_end();
  return out;
}

trace::Expr parse_expr(const std::string& text, const trace::StateSpace& space, SourcePos at) {
  Parser p(text, space, at);
  auto out = p.expr();
  p.expect_end();
  return out;
}

trace::Atom parse_atom(const std::string& text, const trace::StateSpace& space, SourcePos at) {
  Parser p(text, space, at);
  auto out = p.atom_stmt();
  p.expect_end();
  return out;
}

views::View parse_view(const std::string& text, const views::ViewStructure& vs, SourcePos at) {
  Parser p(text, vs.space(), at);
  auto out = p.view(vs);
  p.expect_end();
  return out;
}

}  // namespace tracelang::cli
