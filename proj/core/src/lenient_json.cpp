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

#include "humboldt/lenient_json.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "humboldt/error.hpp"

namespace humboldt {

namespace {

constexpr int kMaxDepth = 256;

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  OrderedJson document() {
    skip_ws();
    OrderedJson value = read_value(0);
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters after document");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string path;
    for (const auto& seg : path_) path += seg;
    throw SyntaxError(path, line, column, what);
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  OrderedJson read_value(int depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    if (at_end()) fail("unexpected end of input");
    switch (peek()) {
      case '{':
        return read_object(depth);
      case '[':
        return read_array(depth);
      case '"':
        return read_string();
      case 't':
        read_literal("true");
        return true;
      case 'f':
        read_literal("false");
        return false;
      case 'n':
        read_literal("null");
        return nullptr;
      default:
        return read_number();
    }
  }

  void read_literal(std::string_view word) {
    if (text_.substr(pos_, word.size()) != word) fail("invalid literal");
    pos_ += word.size();
  }

  OrderedJson read_number() {
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("invalid value");
    if (peek() == '0') {
      ++pos_;
    } else {
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool integral = true;
    if (peek() == '.') {
      integral = false;
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("invalid number");
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    if (peek() == 'e' || peek() == 'E') {
      integral = false;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("invalid number");
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    std::string_view lexeme = text_.substr(start, pos_ - start);
    const char* first = lexeme.data();
    const char* last = lexeme.data() + lexeme.size();
    if (integral) {
      if (lexeme.front() == '-') {
        std::int64_t v = 0;
        if (std::from_chars(first, last, v).ec == std::errc()) return v;
      } else {
        std::uint64_t v = 0;
        if (std::from_chars(first, last, v).ec == std::errc()) return v;
      }
    }
    double d = 0.0;
    auto res = std::from_chars(first, last, d);
    if (res.ec != std::errc() || !std::isfinite(d)) {
      pos_ = start;
      fail("number out of range");
    }
    return d;
  }

  static void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  std::uint32_t read_hex4() {
    if (pos_ + 4 > text_.size()) fail("truncated unicode escape");
    std::uint32_t v = 0;
    auto res = std::from_chars(text_.data() + pos_, text_.data() + pos_ + 4, v, 16);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_ + 4) fail("invalid unicode escape");
    pos_ += 4;
    return v;
  }

  std::string read_string() {
    expect('"');
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated string");
      char c = text_[pos_++];
      if (c == '"') break;
      if (static_cast<unsigned char>(c) < 0x20) fail("control character in string");
      if (c != '\\') {
        out += c;
        continue;
      }
      if (at_end()) fail("unterminated escape");
      char e = text_[pos_++];
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case '/': out += '/'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        case 'u': {
          std::uint32_t cp = read_hex4();
          if (cp >= 0xD800 && cp <= 0xDBFF) {
            if (text_.substr(pos_, 2) != "\\u") fail("unpaired surrogate");
            pos_ += 2;
            std::uint32_t lo = read_hex4();
            if (lo < 0xDC00 || lo > 0xDFFF) fail("unpaired surrogate");
            cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
          } else if (cp >= 0xDC00 && cp <= 0xDFFF) {
            fail("unpaired surrogate");
          }
          append_utf8(out, cp);
          break;
        }
        default:
          fail("invalid escape");
      }
    }
    return out;
  }

  // Reads `"key": value` pairs into obj until `close`. The opening bracket and
  // (optionally) the first key have already been consumed by the caller.
  void read_members(OrderedJson& obj, char close, int depth, std::string first_key) {
    std::string key = std::move(first_key);
    while (true) {
      skip_ws();
      expect(':');
      skip_ws();
      path_.push_back("." + key);
      obj[key] = read_value(depth + 1);
      path_.pop_back();
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        skip_ws();
        if (peek() == close) {
          ++pos_;
          return;
        }
      } else if (peek() == close) {
        ++pos_;
        return;
      } else {
        fail(std::string("expected ',' or '") + close + "'");
      }
      if (peek() != '"') fail("expected object key");
      key = read_string();
    }
  }

  OrderedJson read_object(int depth) {
    expect('{');
    OrderedJson obj = OrderedJson::object();
    skip_ws();
    if (peek() == '}') {
      ++pos_;
      return obj;
    }
    if (peek() != '"') fail("expected object key");
    std::string key = read_string();
    read_members(obj, '}', depth, std::move(key));
    return obj;
  }

  OrderedJson read_array(int depth) {
    expect('[');
    OrderedJson arr = OrderedJson::array();
    skip_ws();
    if (peek() == ']') {
      ++pos_;
      return arr;
    }
    std::size_t index = 0;
    while (true) {
      path_.push_back("[" + std::to_string(index) + "]");
      OrderedJson element = read_value(depth + 1);
      path_.pop_back();
      skip_ws();
      if (peek() == ':') {
        if (index != 0 || !element.is_string()) fail("unexpected ':' in array");
        OrderedJson obj = OrderedJson::object();
        read_members(obj, ']', depth, element.get<std::string>());
        return obj;
      }
      arr.push_back(std::move(element));
      ++index;
      if (peek() == ',') {
        ++pos_;
        skip_ws();
        if (peek() == ']') {
          ++pos_;
          return arr;
        }
      } else if (peek() == ']') {
        ++pos_;
        return arr;
      } else {
        fail("expected ',' or ']'");
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> path_;
};

}  // namespace

OrderedJson parse_lenient_json(std::string_view text) { return Reader(text).document(); }

}  // namespace humboldt
