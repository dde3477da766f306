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

#ifndef TRACELANG_ERROR_HPP
#define TRACELANG_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tracelang {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of a language operator were computed at different length bounds.
class BoundMismatch : public Error {
 public:
  BoundMismatch(std::size_t lhs, std::size_t rhs)
      : Error("bound mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

/// A program or view refers to something that does not exist (unbound
/// recursion variable, undeclared program variable, ...).
class ElaborationError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed a configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace tracelang

#endif  // TRACELANG_ERROR_HPP
