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

#include <random>

#include "humboldt/error.hpp"
#include "humboldt/lenient_json.hpp"

namespace humboldt {
namespace {

TEST(LenientJson, AcceptsTrailingCommas) {
  auto j = parse_lenient_json(R"({"a": [1, 2,], "b": {"c": true,},})");
  EXPECT_EQ(j["a"].size(), 2u);
  EXPECT_TRUE(j["b"]["c"].get<bool>());
}

TEST(LenientJson, ArrayOfMembersReadsAsObject) {
  auto j = parse_lenient_json(R"({"x": ["field": "home", "content": [1, 2]]})");
  ASSERT_TRUE(j["x"].is_object());
  EXPECT_EQ(j["x"]["field"], "home");
  EXPECT_EQ(j["x"]["content"].size(), 2u);
}

TEST(LenientJson, PlainArraysOfStringsStayArrays) {
  auto j = parse_lenient_json(R"(["a", "b"])");
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 2u);
}

TEST(LenientJson, PreservesMemberOrder) {
  auto j = parse_lenient_json(R"({"z": 1, "a": 2, "m": 3})");
  std::vector<std::string> keys;
  for (const auto& [k, _] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"z", "a", "m"}));
}

TEST(LenientJson, ReportsPositionAndPath) {
  try {
    parse_lenient_json("{\n  \"providers\": [\n    {\"type\": tru}\n  ]\n}");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(e.path().find("providers"), std::string::npos) << e.path();
  }
}

TEST(LenientJson, RejectsGarbage) {
  for (const char* bad : {"", "{", "[1 2]", "{\"a\" 1}", "{\"a\": }", "\"open", "[,]", "{,}", "01x", "[1,,2]"}) {
    EXPECT_THROW(parse_lenient_json(bad), SyntaxError) << bad;
  }
}

TEST(LenientJson, RejectsMixedMemberArrays) {
  EXPECT_THROW(parse_lenient_json(R"(["a": 1, 2])"), SyntaxError);
}

TEST(LenientJson, DepthIsBounded) {
  std::string deep(10000, '[');
  EXPECT_THROW(parse_lenient_json(deep), SyntaxError);
}

TEST(LenientJson, AgreesWithStrictParserOnValidInput) {
  std::mt19937_64 rng(7);
  std::function<nlohmann::ordered_json(int)> gen = [&](int depth) -> nlohmann::ordered_json {
    switch (std::uniform_int_distribution<int>(0, depth > 0 ? 6 : 3)(rng)) {
      case 0: return std::uniform_int_distribution<int>(-1000, 1000)(rng);
      case 1: return std::uniform_real_distribution<double>(-1e6, 1e6)(rng);
      case 2: return std::string("s\"\\\n\té") + std::to_string(rng() % 100);
      case 3: return nullptr;
      case 4: {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (int i = 0, n = int(rng() % 4); i < n; ++i) a.push_back(gen(depth - 1));
        return a;
      }
      default: {
        nlohmann::ordered_json o = nlohmann::ordered_json::object();
        for (int i = 0, n = int(rng() % 4); i < n; ++i) o["k" + std::to_string(rng() % 50)] = gen(depth - 1);
        return o;
      }
    }
  };
  for (int i = 0; i < 300; ++i) {
    const auto doc = gen(4);
    const auto text = doc.dump(i % 2 ? 2 : -1);
    EXPECT_EQ(parse_lenient_json(text), nlohmann::ordered_json::parse(text)) << text;
  }
}

TEST(LenientJson, NeverCrashesOnArbitraryBytes) {
  std::mt19937_64 rng(11);
  const std::string alphabet = "{}[]:,\"\\ 0123456789.eE+-truefalsn\n";
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    for (int k = 0, n = int(rng() % 40); k < n; ++k) s += alphabet[rng() % alphabet.size()];
    try {
      parse_lenient_json(s);
    } catch (const SyntaxError&) {
    }
  }
}

}  // namespace
}  // namespace humboldt
