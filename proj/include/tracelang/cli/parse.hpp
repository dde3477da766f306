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

#ifndef TRACELANG_CLI_PARSE_HPP
#define TRACELANG_CLI_PARSE_HPP

// Surface syntax for programs, expressions and views.
//
//   stmt := "skip" | ident ":=" expr | "assume" expr
//         | "atomic" "{" ident ":=" expr ("," ident ":=" expr)* "}"
//         | stmt ";" stmt | stmt "+" stmt | stmt "||" stmt | stmt "*"
//         | "(" stmt ")" | "if" expr "then" stmt ["else" stmt] "end"
//         | "while" expr "do" stmt "end" | "rec" ident "." stmt | ident
//
// Postfix * binds tightest, then ;, then +, then ||; binary operators are
// left-associative and a rec body extends as far right as possible.
// Booleans in expressions are written and/or/not, so that "+", "*" and "||"
// stay unambiguous: an expression only continues across "+" or "*" when the
// next token can start an operand that is not an assignment.

#include <cstddef>
#include <string>

#include "tracelang/prog.hpp"
#include "tracelang/trace.hpp"
#include "tracelang/views.hpp"

namespace tracelang::cli {

/// Positions in errors are reported relative to (line, column) of the first
/// character of `text`.
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Throws ParseError (syntax) or ElaborationError (unbound recursion
/// variable, undeclared program variable).
prog::Prog parse_program(const std::string& text, const trace::StateSpace& space, SourcePos at = {});

trace::Expr parse_expr(const std::string& text, const trace::StateSpace& space, SourcePos at = {});

/// A single atomic statement: assignment, assume or atomic block.
trace::Atom parse_atom(const std::string& text, const trace::StateSpace& space, SourcePos at = {});

/// Separation: clauses "x = v", "x in {v, ...}" and "emp" joined by "*",
/// alternatives joined by "or", plus "true" and "false". Powerset: a state
/// predicate over the declared variables.
views::View parse_view(const std::string& text, const views::ViewStructure& vs, SourcePos at = {});

}  // namespace tracelang::cli

#endif  // TRACELANG_CLI_PARSE_HPP
