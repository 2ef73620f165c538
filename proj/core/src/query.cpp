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

#include "humboldt/query.hpp"

#include "humboldt/error.hpp"

namespace humboldt::query {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::ColonIdent: return "COLON-IDENT";
    case TokenKind::Ident: return "IDENT";
    case TokenKind::Quoted: return "QUOTED";
    case TokenKind::Colon: return "COLON";
    case TokenKind::LParen: return "LPAREN";
    case TokenKind::RParen: return "RPAREN";
    case TokenKind::Amp: return "AMP";
    case TokenKind::Pipe: return "PIPE";
    case TokenKind::Bang: return "BANG";
    case TokenKind::Comma: return "COMMA";
  }
  return "?";
}

bool is_ident_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-' ||
         c == '.' || c == '@' || c == '/' || u >= 0x80;
}

bool is_bare_word(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_ident_char(c)) return false;
  }
  return true;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto read_ident = [&](std::size_t from) {
    std::size_t j = from;
    while (j < n && is_ident_char(text[j])) ++j;
    return j;
  };
  while (i < n) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    switch (c) {
      case '(': tokens.push_back({TokenKind::LParen, {}, start}); ++i; continue;
      case ')': tokens.push_back({TokenKind::RParen, {}, start}); ++i; continue;
      case '&': tokens.push_back({TokenKind::Amp, {}, start}); ++i; continue;
      case '|': tokens.push_back({TokenKind::Pipe, {}, start}); ++i; continue;
      case '!': tokens.push_back({TokenKind::Bang, {}, start}); ++i; continue;
      case ',': tokens.push_back({TokenKind::Comma, {}, start}); ++i; continue;
      default: break;
    }
    if (c == ':') {
      // `field:` binds to an identifier written directly before the colon;
      // anywhere else `:name` starts a provider call.
      const bool attached = !tokens.empty() && start > 0 && text[start - 1] != ' ' && text[start - 1] != '\t' &&
                            text[start - 1] != '\n' && text[start - 1] != '\r' &&
                            (tokens.back().kind == TokenKind::Ident || tokens.back().kind == TokenKind::Quoted);
      if (!attached && i + 1 < n && is_ident_char(text[i + 1])) {
        std::size_t end = read_ident(i + 1);
        tokens.push_back({TokenKind::ColonIdent, std::string(text.substr(i + 1, end - i - 1)), start});
        i = end;
      } else {
        tokens.push_back({TokenKind::Colon, {}, start});
        ++i;
      }
      continue;
    }
    if (c == '\'' || c == '"') {
      std::string value;
      std::size_t j = i + 1;
      bool closed = false;
      while (j < n) {
        char d = text[j];
        if (d == '\\' && j + 1 < n && (text[j + 1] == c || text[j + 1] == '\\')) {
          value += text[j + 1];
          j += 2;
          continue;
        }
        if (d == c) {
          closed = true;
          break;
        }
        value += d;
        ++j;
      }
      if (!closed) throw LexError(start, "unterminated quote");
      tokens.push_back({TokenKind::Quoted, std::move(value), start});
      i = j + 1;
      continue;
    }
    if (is_ident_char(c)) {
      std::size_t end = read_ident(i);
      tokens.push_back({TokenKind::Ident, std::string(text.substr(i, end - i)), start});
      i = end;
      continue;
    }
    throw LexError(start, std::string("illegal character '") + c + "'");
  }
  return tokens;
}

namespace {

template <class T>
NodePtr make(T value) {
  return std::make_shared<const Node>(Node{std::move(value)});
}

class Parser {
 public:
  Parser(std::span<const Token> tokens, std::size_t end) : tokens_(tokens), end_(end) {}

  Query run() {
    if (tokens_.empty()) return {};
    NodePtr root = parse_or();
    if (pos_ < tokens_.size()) fail({"'&'", "'|'", "keyword", "end of input"});
    return {std::move(root)};
  }

 private:
  const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }
  bool at(TokenKind k) const { return peek() && peek()->kind == k; }
  std::size_t here() const { return pos_ < tokens_.size() ? tokens_[pos_].position : end_; }

  [[noreturn]] void fail(std::vector<std::string> expected) const { throw ParseError(here(), std::move(expected)); }

  bool starts_unary() const {
    const Token* t = peek();
    if (!t) return false;
    switch (t->kind) {
      case TokenKind::Bang:
      case TokenKind::LParen:
      case TokenKind::ColonIdent:
      case TokenKind::Ident:
      case TokenKind::Quoted:
        return true;
      default:
        return false;
    }
  }

  NodePtr parse_or() {
    NodePtr left = parse_and();
    while (at(TokenKind::Pipe)) {
      ++pos_;
      left = or_(std::move(left), parse_and());
    }
    return left;
  }

  NodePtr parse_and() {
    NodePtr left = parse_unary();
    while (true) {
      if (at(TokenKind::Amp)) {
        ++pos_;
        left = and_(std::move(left), parse_unary());
      } else if (starts_unary()) {
        left = and_(std::move(left), parse_unary());
      } else {
        return left;
      }
    }
  }

  NodePtr parse_unary() {
    if (at(TokenKind::Bang)) {
      ++pos_;
      return not_(parse_unary());
    }
    return parse_primary();
  }

  std::string parse_value(const char* what) {
    if (at(TokenKind::Ident) || at(TokenKind::Quoted)) return tokens_[pos_++].text;
    fail({what});
  }

  NodePtr parse_primary() {
    const Token* t = peek();
    if (!t) fail({"keyword", "field", "provider call", "'('", "'!'"});
    switch (t->kind) {
      case TokenKind::LParen: {
        ++pos_;
        NodePtr inner = parse_or();
        if (!at(TokenKind::RParen)) fail({"')'"});
        ++pos_;
        return group(std::move(inner));
      }
      case TokenKind::ColonIdent: {
        std::string name = t->text;
        ++pos_;
        std::vector<std::string> args;
        if (at(TokenKind::LParen)) {
          ++pos_;
          if (!at(TokenKind::RParen)) {
            args.push_back(parse_value("argument"));
            while (at(TokenKind::Comma)) {
              ++pos_;
              args.push_back(parse_value("argument"));
            }
          }
          if (!at(TokenKind::RParen)) fail({"','", "')'"});
          ++pos_;
        }
        return provider_call(std::move(name), std::move(args));
      }
      case TokenKind::Ident: {
        std::string text = t->text;
        ++pos_;
        if (at(TokenKind::Colon)) {
          ++pos_;
          return field_pill(std::move(text), parse_value("value"));
        }
        return keyword(std::move(text));
      }
      case TokenKind::Quoted: {
        std::string text = t->text;
        ++pos_;
        return keyword(std::move(text));
      }
      default:
        fail({"keyword", "field", "provider call", "'('", "'!'"});
    }
  }

  std::span<const Token> tokens_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

std::string quote(std::string_view s) {
  char q = '\'';
  if (s.find('\'') != std::string_view::npos && s.find('"') == std::string_view::npos) q = '"';
  std::string out(1, q);
  for (char c : s) {
    if (c == q || c == '\\') out += '\\';
    out += c;
  }
  out += q;
  return out;
}

std::string word(std::string_view s) { return is_bare_word(s) ? std::string(s) : quote(s); }

// Binding strength used to decide where parentheses are needed.
int precedence(const Node& n) {
  if (std::holds_alternative<Or>(n.value)) return 1;
  if (std::holds_alternative<And>(n.value)) return 2;
  if (std::holds_alternative<Not>(n.value)) return 3;
  return 4;
}

void print_node(const Node& n, std::string& out);

void print_child(const NodePtr& child, int min_prec, std::string& out) {
  if (precedence(*child) < min_prec) {
    out += '(';
    print_node(*child, out);
    out += ')';
  } else {
    print_node(*child, out);
  }
}

void print_node(const Node& n, std::string& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Keyword>) {
          out += word(v.text);
        } else if constexpr (std::is_same_v<T, FieldPill>) {
          out += v.field;
          out += ": ";
          out += word(v.value);
        } else if constexpr (std::is_same_v<T, ProviderCall>) {
          out += ':';
          out += v.name;
          out += '(';
          for (std::size_t i = 0; i < v.args.size(); ++i) {
            if (i) out += ", ";
            out += word(v.args[i]);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, And>) {
          print_child(v.left, 2, out);
          out += " & ";
          print_child(v.right, 3, out);
        } else if constexpr (std::is_same_v<T, Or>) {
          print_child(v.left, 1, out);
          out += " | ";
          print_child(v.right, 2, out);
        } else if constexpr (std::is_same_v<T, Not>) {
          out += '!';
          print_child(v.child, 3, out);
        } else {
          out += '(';
          print_node(*v.child, out);
          out += ')';
        }
      },
      n.value);
}

}  // namespace

bool same_tree(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool operator==(const Node& a, const Node& b) {
  if (a.value.index() != b.value.index()) return false;
  return std::visit(
      [&](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        const auto& r = std::get<T>(b.value);
        if constexpr (std::is_same_v<T, Keyword>) {
          return l.text == r.text;
        } else if constexpr (std::is_same_v<T, FieldPill>) {
          return l.field == r.field && l.value == r.value;
        } else if constexpr (std::is_same_v<T, ProviderCall>) {
          return l.name == r.name && l.args == r.args;
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          return same_tree(l.left, r.left) && same_tree(l.right, r.right);
        } else {
          return same_tree(l.child, r.child);
        }
      },
      a.value);
}

NodePtr keyword(std::string text) { return make(Keyword{std::move(text)}); }
NodePtr field_pill(std::string field, std::string value) { return make(FieldPill{std::move(field), std::move(value)}); }
NodePtr provider_call(std::string name, std::vector<std::string> args) {
  return make(ProviderCall{std::move(name), std::move(args)});
}
NodePtr and_(NodePtr left, NodePtr right) { return make(And{std::move(left), std::move(right)}); }
NodePtr or_(NodePtr left, NodePtr right) { return make(Or{std::move(left), std::move(right)}); }
NodePtr not_(NodePtr child) { return make(Not{std::move(child)}); }
NodePtr group(NodePtr child) { return make(Group{std::move(child)}); }

Query parse(std::span<const Token> tokens, std::size_t end_position) { return Parser(tokens, end_position).run(); }

Query parse_query(std::string_view text) {
  const auto tokens = tokenize(text);
  return parse(tokens, text.size());
}

std::string print(const NodePtr& node) {
  std::string out;
  if (node) print_node(*node, out);
  return out;
}

std::string print(const Query& query) { return print(query.root); }

}  // namespace humboldt::query
