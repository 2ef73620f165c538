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
#include "humboldt/evaluate.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace humboldt {
namespace {

using query::parse_query;
using testing::Ids;
using testing::Rng;

Ids random_subset(Rng& rng, const Ids& all) {
  Ids out;
  for (const auto& id : all) {
    if (rng() % 2) out.insert(id);
  }
  return out;
}

Ids intersect(const Ids& a, const Ids& b) {
  Ids out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

class EvaluateFixture : public ::testing::Test {
 protected:
  CatalogPtr snapshot = testing::fixture_catalog();
  SpecDocument doc = testing::fixture_spec();
  ProviderRegistry registry = register_providers(doc);

  Ids run(const std::string& q, const Ids* scope = nullptr) {
    return evaluate(parse_query(q), scope ? *scope : all_ids(*snapshot), *snapshot, registry).ids;
  }
};

TEST_F(EvaluateFixture, WorkbooksByJohnDoe) {
  EXPECT_EQ(run("type: workbook owned_by: 'John Doe'"), (Ids{"wb_fleet", "wb_revenue"}));
}

TEST_F(EvaluateFixture, RecentAndBit) {
  // Recency list ∩ keyword matches, computed independently.
  Ids recent, bit;
  for (const auto& [id, a] : snapshot->artifacts()) {
    if (a.fields.count("created_at")) recent.insert(id);
    if (testing::oracle_eval(query::keyword("bit"), {id}, *snapshot).size() == 1) bit.insert(id);
  }
  EXPECT_EQ(run(":recent_documents() & bit"), intersect(recent, bit));
  EXPECT_EQ(run(":recent_documents() & bit"), (Ids{"dash_bitrate", "wb_fleet", "wb_revenue"}));  // "orbit"
}

TEST_F(EvaluateFixture, FieldKinds) {
  EXPECT_EQ(run("favorite: true"), (Ids{"AIRLINES_id", "wb_revenue"}));
  EXPECT_EQ(run("views: 10"), Ids{"AIRLINES_id"});
  EXPECT_EQ(run("views: 10.0"), Ids{"AIRLINES_id"});
  EXPECT_EQ(run("created_at: 1700000000"), Ids{"AIRLINES_id"});
  EXPECT_EQ(run("badged_by: CERTIFIED"), (Ids{"viz_ontime", "wb_marketing"}));
  EXPECT_EQ(run("name: 'fleet BITS'"), Ids{"wb_fleet"});
  EXPECT_EQ(run("kind: dashboard"), Ids{"dash_bitrate"});
  EXPECT_EQ(run("owned_by: 'Nobody'"), Ids{});
  EXPECT_EQ(run("owned_by: John"), Ids{});  // pills are not substring matches
}

TEST_F(EvaluateFixture, EmptyQueryIsScope) {
  EXPECT_EQ(run(""), all_ids(*snapshot));
  const Ids scope{"wb_fleet", "PAYROLL_id"};
  EXPECT_EQ(run("", &scope), scope);
}

TEST_F(EvaluateFixture, NegationIsScopeRelative) {
  const Ids scope{"wb_fleet", "wb_revenue", "AIRLINES_id"};
  EXPECT_EQ(run("!type: workbook", &scope), Ids{"AIRLINES_id"});
}

TEST_F(EvaluateFixture, ProviderArguments) {
  EXPECT_EQ(run(":owned_by('John Doe')"), (Ids{"wb_fleet", "wb_revenue"}));
  EXPECT_EQ(run(":type(table) & :endorsed"), Ids{"AIRLINES_id"});
  EXPECT_EQ(run(":name_based(AIRLINES_id)"), (Ids{"AIRLINES_id", "FLIGHTS_id"}));
}

TEST_F(EvaluateFixture, ProviderErrors) {
  EXPECT_THROW(run(":nope()"), UnknownProviderError);
  EXPECT_THROW(run(":recents()"), UnknownProviderError);  // hidden from search
  EXPECT_THROW(run(":owned_by()"), MissingInputError);
  EXPECT_THROW(run(":team()"), ProviderUnavailableError);  // no transport configured
}

TEST_F(EvaluateFixture, AmbiguousAliasListsCandidates) {
  const auto d = parse_spec(R"({"providers": [
    {"type": "recent", "name": "Recent Documents", "representation": "LIST"},
    {"type": "recent", "name": "Recent-Documents", "endpoint": "x", "representation": "LIST"}]})");
  const auto r = register_providers(d);
  try {
    evaluate(parse_query(":recent_documents"), all_ids(*snapshot), *snapshot, r);
    FAIL();
  } catch (const UnknownProviderError& e) {
    EXPECT_EQ(e.candidates().size(), 2u);
  }
}

TEST_F(EvaluateFixture, FilterHidesProviders) {
  ProviderFilter hide_favorites = [](const ProviderSpec& s) { return s.name != "Favorites"; };
  EXPECT_THROW(evaluate(parse_query(":favorites"), all_ids(*snapshot), *snapshot, registry, hide_favorites),
               UnknownProviderError);
}

TEST_F(EvaluateFixture, RecordsProviderHitsOnce) {
  Evaluator ev(*snapshot, registry);
  ev.evaluate(parse_query(":favorites | :favorites & views: 7"), {"wb_revenue"});
  ASSERT_EQ(ev.provider_hits().size(), 1u);
  EXPECT_EQ(ev.provider_hits().at({"favorites", "Favorites"}), (Ids{"AIRLINES_id", "wb_revenue"}));
}

// Random catalogs × random queries against the brute-force evaluator.
class EvaluateOracle : public ::testing::Test {
 protected:
  SpecDocument doc = testing::oracle_spec();
  ProviderRegistry registry = register_providers(doc);
};

TEST_F(EvaluateOracle, NegationFreeQueriesMatchOracleAndScopeLaw) {
  Rng rng(2024);
  for (int c = 0; c < 40; ++c) {
    const auto catalog = testing::random_catalog(rng);
    const auto all = testing::ids_of(catalog);
    for (int q = 0; q < 40; ++q) {
      const auto ast = testing::random_query(rng, 4, false);
      const query::Query query{ast};
      const auto full = evaluate(query, all, catalog, registry).ids;
      ASSERT_EQ(full, testing::oracle_eval(ast, all, catalog)) << query::print(query);
      const auto view = random_subset(rng, all);
      const auto scoped = evaluate(query, view, catalog, registry);
      EXPECT_EQ(scoped.ids, intersect(full, view)) << query::print(query);
      EXPECT_EQ(scoped.scope, view);
    }
  }
}

TEST_F(EvaluateOracle, NegationLaws) {
  Rng rng(77);
  for (int c = 0; c < 30; ++c) {
    const auto catalog = testing::random_catalog(rng);
    const auto all = testing::ids_of(catalog);
    Evaluator ev(catalog, registry);
    for (int q = 0; q < 30; ++q) {
      const auto a = testing::random_query(rng, 3, true);
      const auto b = testing::random_query(rng, 3, true);
      const auto scope = random_subset(rng, all);
      auto eval = [&](const query::NodePtr& n) { return ev.evaluate(query::Query{n}, scope).ids; };
      const auto ea = eval(a), eb = eval(b);
      ASSERT_EQ(ea, testing::oracle_eval(a, scope, catalog)) << query::print(a);
      Ids uni = ea;
      uni.insert(eb.begin(), eb.end());
      EXPECT_EQ(eval(query::and_(a, b)), intersect(ea, eb));
      EXPECT_EQ(eval(query::or_(a, b)), uni);
      const auto na = eval(query::not_(a));
      EXPECT_TRUE(intersect(na, ea).empty());
      Ids cover = na;
      cover.insert(ea.begin(), ea.end());
      EXPECT_EQ(cover, scope);
      EXPECT_EQ(eval(query::not_(query::not_(a))), ea);
      EXPECT_EQ(eval(query::not_(query::group(query::and_(a, b)))),
                eval(query::or_(query::not_(a), query::not_(b))));
      EXPECT_EQ(eval(query::not_(query::group(query::or_(a, b)))),
                eval(query::and_(query::not_(a), query::not_(b))));
    }
  }
}

TEST_F(EvaluateOracle, ResultsStayInScope) {
  Rng rng(5);
  for (int c = 0; c < 30; ++c) {
    const auto catalog = testing::random_catalog(rng);
    const auto scope = random_subset(rng, testing::ids_of(catalog));
    for (int q = 0; q < 20; ++q) {
      const auto r = evaluate(query::Query{testing::random_query(rng, 4, true)}, scope, catalog, registry);
      for (const auto& id : r.ids) EXPECT_TRUE(scope.count(id));
    }
  }
}

TEST(ResolveField, Aliases) {
  EXPECT_EQ(resolve_field("type").target, FieldRef::Target::Kind);
  EXPECT_EQ(resolve_field("kind").target, FieldRef::Target::Kind);
  EXPECT_EQ(resolve_field("name").target, FieldRef::Target::Name);
  EXPECT_EQ(resolve_field("owned_by").metadata_field, "owner");
  EXPECT_EQ(resolve_field("badged_by").metadata_field, "badge");
  EXPECT_EQ(resolve_field("views").metadata_field, "views");
}

}  // namespace
}  // namespace humboldt
