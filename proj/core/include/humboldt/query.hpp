/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace humboldt::query {

enum class TokenKind {
  ColonIdent,  // `:name`, a provider call
  Ident,
  Quoted,      // 'single' or "double"; \\ and \<quote> are the only escapes
  Colon,       // field separator in `field: value`
  LParen,
  RParen,
  Amp,
  Pipe,
  Bang,
  Comma,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;  // identifier or unescaped string content; empty for punctuation
  std::size_t position = 0;

  bool operator==(const Token& o) const { return kind == o.kind && text == o.text; }
};

// Throws LexError on an unterminated quote or a character outside the language.
std::vector<Token> tokenize(std::string_view text);

bool is_ident_char(char c);
// True when s lexes as exactly one Ident token.
bool is_bare_word(std::string_view s);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Keyword {
  std::string text;
};

struct FieldPill {
  std::string field;
  std::string value;
};

// `:name(arg, ...)`; name is matched against providers by normalised alias.
struct ProviderCall {
  std::string name;
  std::vector<std::string> args;
};

struct And {
  NodePtr left;
  NodePtr right;
};

struct Or {
  NodePtr left;
  NodePtr right;
};

struct Not {
  NodePtr child;
};

// Explicit parentheses. Transparent to evaluation.
struct Group {
  NodePtr child;
};

struct Node {
  std::variant<Keyword, FieldPill, ProviderCall, And, Or, Not, Group> value;
};

bool operator==(const Node& a, const Node& b);
bool same_tree(const NodePtr& a, const NodePtr& b);

NodePtr keyword(std::string text);
NodePtr field_pill(std::string field, std::string value);
NodePtr provider_call(std::string name, std::vector<std::string> args = {});
NodePtr and_(NodePtr left, NodePtr right);
NodePtr or_(NodePtr left, NodePtr right);
NodePtr not_(NodePtr child);
NodePtr group(NodePtr child);

// A parsed query. A null root is the empty query, which matches its whole scope.
struct Query {
  NodePtr root;

  bool empty() const { return root == nullptr; }
  bool operator==(const Query& o) const { return same_tree(root, o.root); }
};

// Grammar, `!` binding tighter than `&` tighter than `|`, all left-associative:
//   query   := or
//   or      := and ('|' and)*
//   and     := unary ('&'? unary)*        adjacency means AND
//   unary   := '!' unary | primary
//   primary := '(' query ')' | ':' name ['(' [arg (',' arg)*] ')']
//            | field ':' value | keyword
// Throws ParseError with the offending token's offset (end_position at EOF).
Query parse(std::span<const Token> tokens, std::size_t end_position);
Query parse_query(std::string_view text);

// Canonical text: explicit `&`, quotes around values that are not bare words,
// parentheses wherever precedence requires them.
std::string print(const Query& query);
std::string print(const NodePtr& node);

}  // namespace humboldt::query
