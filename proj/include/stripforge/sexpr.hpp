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

#ifndef STRIPFORGE_SEXPR_HPP_
#define STRIPFORGE_SEXPR_HPP_

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace stripforge::sexpr {

struct Node {
  enum class Kind { list, atom, string };

  Kind kind = Kind::list;
  std::string text;  // atom or decoded string contents
  std::vector<Node> children;
  std::size_t line = 1;
  std::size_t column = 1;

  [[nodiscard]] bool is_list() const { return kind == Kind::list; }

  // Head symbol of a list such as `(comp ...)`, or empty.
  [[nodiscard]] std::string_view head() const {
    if (kind != Kind::list || children.empty() || children.front().kind != Kind::atom) return {};
    return children.front().text;
  }

  // First child list with the given head, or nullptr.
  [[nodiscard]] const Node* child(std::string_view name) const {
    for (const auto& c : children) {
      if (c.head() == name) return &c;
    }
    return nullptr;
  }

  // Scalar argument of `(name value)`; nullptr when absent or not scalar.
  [[nodiscard]] const Node* value_of(std::string_view name) const {
    const Node* c = child(name);
    if (c == nullptr || c->children.size() < 2 || c->children[1].is_list()) return nullptr;
    return &c->children[1];
  }
};

namespace detail {

enum class TokenKind { open, close, atom, string, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

// Character-level state machine: between tokens, inside an atom, inside a quoted string.
class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_.size()) return tok;
    char c = text_[pos_];
    if (c == '(') {
      advance();
      tok.kind = TokenKind::open;
    } else if (c == ')') {
      advance();
      tok.kind = TokenKind::close;
    } else if (c == '"') {
      advance();
      tok.kind = TokenKind::string;
      tok.text = read_string(tok);
    } else {
      tok.kind = TokenKind::atom;
      while (pos_ < text_.size()) {
        char a = text_[pos_];
        if (std::isspace(static_cast<unsigned char>(a)) || a == '(' || a == ')' || a == '"') break;
        tok.text.push_back(a);
        advance();
      }
    }
    return tok;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  std::string read_string(const Token& start) {
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) throw ParseError("unterminated string", start.line, start.column);
      char c = text_[pos_];
      advance();
      if (c == '"') return out;
      if (c == '\\') {
        if (pos_ >= text_.size()) throw ParseError("unterminated string", start.line, start.column);
        char e = text_[pos_];
        advance();
        switch (e) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case 'r': out.push_back('\r'); break;
          default: out.push_back(e); break;
        }
      } else {
        out.push_back(c);
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace detail

// Reads exactly one top-level S-expression list from `text`.
[[nodiscard]] inline Node parse(std::string_view text) {
  detail::Tokenizer tokens(text);
  detail::Token tok = tokens.next();
  if (tok.kind == detail::TokenKind::end) throw ParseError("empty input", tok.line, tok.column);
  if (tok.kind != detail::TokenKind::open) throw ParseError("expected '('", tok.line, tok.column);

  std::vector<Node> stack;
  stack.push_back(Node{Node::Kind::list, {}, {}, tok.line, tok.column});
  while (!stack.empty()) {
    tok = tokens.next();
    switch (tok.kind) {
      case detail::TokenKind::open:
        stack.push_back(Node{Node::Kind::list, {}, {}, tok.line, tok.column});
        break;
      case detail::TokenKind::close: {
        Node done = std::move(stack.back());
        stack.pop_back();
        if (stack.empty()) {
          detail::Token rest = tokens.next();
          if (rest.kind != detail::TokenKind::end) {
            throw ParseError("unexpected data after top-level expression", rest.line, rest.column);
          }
          return done;
        }
        stack.back().children.push_back(std::move(done));
        break;
      }
      case detail::TokenKind::atom:
        stack.back().children.push_back(Node{Node::Kind::atom, std::move(tok.text), {}, tok.line, tok.column});
        break;
      case detail::TokenKind::string:
        stack.back().children.push_back(Node{Node::Kind::string, std::move(tok.text), {}, tok.line, tok.column});
        break;
      case detail::TokenKind::end:
        throw ParseError("unbalanced '(' opened here", stack.back().line, stack.back().column);
    }
  }
  throw ParseError("unreachable", tok.line, tok.column);
}

}  // namespace stripforge::sexpr

#endif  // STRIPFORGE_SEXPR_HPP_
