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

#include <gtest/gtest.h>

#include "humboldt/error.hpp"
#include "humboldt/query.hpp"
#include "oracles.hpp"

namespace humboldt::query {
namespace {

std::vector<TokenKind> kinds(const std::vector<Token>& tokens) {
  std::vector<TokenKind> out;
  for (const auto& t : tokens) out.push_back(t.kind);
  return out;
}

TEST(Tokenize, ProviderCallAndKeyword) {
  const auto t = tokenize(":recent_documents() & bit");
  EXPECT_EQ(kinds(t), (std::vector<TokenKind>{TokenKind::ColonIdent, TokenKind::LParen, TokenKind::RParen,
                                              TokenKind::Amp, TokenKind::Ident}));
  EXPECT_EQ(t[0].text, "recent_documents");
  EXPECT_EQ(t[4].text, "bit");
  EXPECT_EQ(t[4].position, 22u);
}

TEST(Tokenize, FieldPill) {
  const auto t = tokenize("owned_by: 'John Doe'");
  EXPECT_EQ(t, (std::vector<Token>{{TokenKind::Ident, "owned_by", 0},
                                   {TokenKind::Colon, "", 8},
                                   {TokenKind::Quoted, "John Doe", 10}}));
}

TEST(Tokenize, QuotesAndEscapes) {
  EXPECT_EQ(tokenize(R"("say \"hi\"")")[0].text, R"(say "hi")");
  EXPECT_EQ(tokenize(R"('a\\b')")[0].text, R"(a\b)");
  EXPECT_EQ(tokenize(R"('it''s')").size(), 2u);
}

TEST(Tokenize, Errors) {
  try {
    tokenize("'unterminated");
    FAIL();
  } catch (const LexError& e) {
    EXPECT_EQ(e.position(), 0u);
  }
  try {
    tokenize("a & #");
    FAIL();
  } catch (const LexError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(tokenize("x: \"open"), LexError);
}

TEST(Tokenize, ColonAfterSpaceStartsProviderCall) {
  EXPECT_EQ(kinds(tokenize("a :b")), (std::vector<TokenKind>{TokenKind::Ident, TokenKind::ColonIdent}));
  EXPECT_EQ(kinds(tokenize("a:b")), (std::vector<TokenKind>{TokenKind::Ident, TokenKind::Colon, TokenKind::Ident}));
}

TEST(Parse, AbstractQuery) {
  const auto q = parse_query("type: table owned_by: 'Alex' badged_by: 'Mike' & 'sales'");
  const auto want = and_(and_(and_(field_pill("type", "table"), field_pill("owned_by", "Alex")),
                              field_pill("badged_by", "Mike")),
                         keyword("sales"));
  EXPECT_TRUE(same_tree(q.root, want)) << print(q);
}

TEST(Parse, RecentAndKeyword) {
  const auto q = parse_query(":recent_documents() & bit");
  EXPECT_TRUE(same_tree(q.root, and_(provider_call("recent_documents"), keyword("bit")))) << print(q);
}

TEST(Parse, Precedence) {
  EXPECT_TRUE(same_tree(parse_query("a | b & c").root, or_(keyword("a"), and_(keyword("b"), keyword("c")))));
  EXPECT_TRUE(same_tree(parse_query("!(x | y)").root, not_(group(or_(keyword("x"), keyword("y"))))));
  EXPECT_TRUE(same_tree(parse_query("!a b").root, and_(not_(keyword("a")), keyword("b"))));
  EXPECT_TRUE(same_tree(parse_query("a | b | c").root, or_(or_(keyword("a"), keyword("b")), keyword("c"))));
  EXPECT_TRUE(same_tree(parse_query("!!a").root, not_(not_(keyword("a")))));
}

TEST(Parse, ProviderCallArguments) {
  EXPECT_TRUE(same_tree(parse_query(":owned_by('John Doe', x)").root, provider_call("owned_by", {"John Doe", "x"})));
  EXPECT_TRUE(same_tree(parse_query(":favorites").root, provider_call("favorites")));
  EXPECT_TRUE(same_tree(parse_query(":favorites bit").root, and_(provider_call("favorites"), keyword("bit"))));
}

TEST(Parse, Empty) {
  EXPECT_TRUE(parse_query("").empty());
  EXPECT_TRUE(parse_query("   ").empty());
}

TEST(Parse, ErrorsCarryPosition) {
  const std::vector<std::pair<std::string, std::size_t>> cases = {
      {"a & (b", 6}, {"a &", 3}, {"| a", 0}, {"a)", 1}, {"type:", 5}, {":f(a b)", 5}, {"()", 1}, {"a & & b", 4},
  };
  for (const auto& [text, pos] : cases) {
    try {
      parse_query(text);
      ADD_FAILURE() << "accepted " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.position(), pos) << text << ": " << e.what();
      EXPECT_FALSE(e.expected().empty());
    }
  }
}

TEST(Print, QuotesWhenNeeded) {
  EXPECT_EQ(print(parse_query("owned_by: 'John Doe' bit")), "owned_by: 'John Doe' & bit");
  EXPECT_EQ(print(parse_query("a|(b c)")), "a | (b & c)");
  EXPECT_EQ(print(parse_query(":owned_by(\"x y\")")), ":owned_by('x y')");
  EXPECT_EQ(print(Query{keyword("it's")}), R"("it's")");
  EXPECT_EQ(print(Query{keyword("it's \"x\"")}), R"('it\'s "x"')");
  EXPECT_EQ(print(Query{}), "");
}

TEST(Print, RoundTripFixedPoint) {
  testing::Rng rng(101);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto ast = testing::random_query(rng, 5, true);
    const auto text = print(Query{ast});
    const auto once = parse_query(text);
    const auto printed = print(once);
    EXPECT_EQ(printed, text);
    EXPECT_TRUE(same_tree(parse_query(printed).root, once.root)) << text;
    ++checked;
  }
  EXPECT_EQ(checked, 1000);
}

TEST(Print, ArbitraryWordsSurviveQuoting) {
  testing::Rng rng(103);
  for (int i = 0; i < 1000; ++i) {
    const auto a = testing::random_text(rng);
    const auto b = testing::random_text(rng);
    const auto c = testing::random_text(rng);
    const auto ast = or_(and_(keyword(a), field_pill("f", b)), provider_call("p", {c, a}));
    const auto back = parse_query(print(Query{ast}));
    EXPECT_TRUE(same_tree(back.root, ast)) << print(Query{ast});
  }
}

TEST(Print, ParsedStringsReachFixedPoint) {
  const std::vector<std::string> inputs = {
      "a b c",          "a|b&c",          "!(x|y) z",        "((a))",           "type:table & !badged_by:'x y'",
      ":f(a,b) | :g()", "name: \"a\\\"b\"", "a & (b | (c & !d))", "x-y.z@w/q",     "é:ü",
  };
  for (const auto& in : inputs) {
    const auto p1 = print(parse_query(in));
    const auto p2 = print(parse_query(p1));
    EXPECT_EQ(p1, p2) << in;
  }
}

}  // namespace
}  // namespace humboldt::query
