// Copyright 2026 The Stripforge Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STRIPFORGE_ERRORS_HPP_
#define STRIPFORGE_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stripforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed netlist text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line), column_(column) {}

  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Well-formed input that violates a circuit invariant (unknown reference, duplicate ref, ...).
class SemanticError : public Error {
 public:
  using Error::Error;
};

// JSON document that does not match an interchange schema. `path` is a JSON pointer.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& what) : Error(path + ": " + what), path_(path) {}

  [[nodiscard]] const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class EmissionError : public Error {
 public:
  using Error::Error;
};

// Raised by operations that have no value on an empty layout (board extent).
class EmptyLayoutError : public Error {
 public:
  EmptyLayoutError() : Error("layout has no placements; board extent is undefined") {}
};

}  // namespace stripforge

#endif  // STRIPFORGE_ERRORS_HPP_
