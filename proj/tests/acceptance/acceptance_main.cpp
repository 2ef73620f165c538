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

// Runs every acceptance criterion end to end and prints one PASS/FAIL line
// each. Exit status is non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "httplib.h"
#include "humboldt/error.hpp"
#include "humboldt/evaluate.hpp"
#include "humboldt/providers.hpp"
#include "humboldt/ranking.hpp"
#include "humboldt/rest.hpp"
#include "humboldt/service.hpp"
#include "humboldt/spec.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace humboldt {
namespace {

using nlohmann::json;
using namespace std::chrono_literals;
namespace ts = humboldt::testing;

// Collects failed checks for one criterion.
class Checker {
 public:
  bool check(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
    return ok;
  }
  template <typename F>
  void expect_throw(const std::string& code, const std::string& what, F&& f) {
    try {
      f();
      check(false, what + ": no error");
    } catch (const Error& e) {
      check(e.code() == code, what + ": got " + e.code());
    } catch (const std::exception& e) {
      check(false, what + ": " + e.what());
    }
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + f;
    if (failed_ > failures_.size()) out += "; +" + std::to_string(failed_ - failures_.size()) + " more";
    return out;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t failed_ = 0;
};

struct Criterion {
  std::string name;
  std::chrono::milliseconds budget;
  std::function<void(Checker&)> body;
};

ts::Ids intersect(const ts::Ids& a, const ts::Ids& b) {
  ts::Ids out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

ts::Ids random_subset(ts::Rng& rng, const ts::Ids& all) {
  ts::Ids out;
  for (const auto& id : all) {
    if (rng() % 2) out.insert(id);
  }
  return out;
}

void spec_conformance(Checker& c) {
  const std::vector<std::pair<std::string, std::string>> docs = {
      {"joinable provider", ts::assemble_document({ts::read_fixture("joinable_provider.json")})},
      {"ranking block", ts::assemble_document({}, {ts::read_fixture("ranking_fragment.txt")})},
      {"home page block", ts::assemble_document(ts::home_page_providers(), {ts::read_fixture("home_fragment.txt")})},
  };
  for (const auto& [label, text] : docs) {
    try {
      const auto doc = parse_spec(text);
      c.check(validate_spec(doc).empty(), label + ": violations");
      const auto printed = serialize_spec(doc);
      const auto again = parse_spec(printed);
      c.check(again == doc, label + ": round trip changed the document");
      c.check(serialize_spec(again) == printed, label + ": serialisation not stable");
      if (label == "home page block") {
        const auto resolved = resolve_custom_content(doc);
        c.check(resolved.warnings.empty(), label + ": unresolved provider names");
        c.check(resolved.pages.size() == 2, label + ": expected two team pages");
      }
      if (label == "ranking block") {
        c.check(doc.global_ranking && doc.global_ranking->entries.size() == 2, label + ": weights");
      }
    } catch (const std::exception& e) {
      c.check(false, label + ": " + e.what());
    }
  }
}

void grammar(Checker& c) {
  using namespace query;
  ts::Rng rng(31337);
  int fixed = 0;
  for (int i = 0; i < 250; ++i) {
    const auto text = print(Query{ts::random_query(rng, 5, true)});
    try {
      const auto once = parse_query(text);
      const auto printed = print(once);
      if (c.check(printed == text && same_tree(parse_query(printed).root, once.root), "not a fixed point: " + text)) {
        ++fixed;
      }
    } catch (const std::exception& e) {
      c.check(false, text + ": " + e.what());
    }
  }
  c.check(fixed >= 200, "only " + std::to_string(fixed) + " fixed points");

  const auto a = parse_query("type: table owned_by: 'Alex' badged_by: 'Mike' & 'sales'");
  c.check(same_tree(a.root, and_(and_(and_(field_pill("type", "table"), field_pill("owned_by", "Alex")),
                                      field_pill("badged_by", "Mike")),
                                 keyword("sales"))),
          "pill query AST: " + print(a));
  const auto b = parse_query(":recent_documents() & bit");
  c.check(same_tree(b.root, and_(provider_call("recent_documents"), keyword("bit"))), "call query AST: " + print(b));
}

void set_semantics(Checker& c) {
  const auto doc = ts::oracle_spec();
  const auto registry = register_providers(doc);
  ts::Rng rng(8080);
  for (int k = 0; k < 100; ++k) {
    const auto catalog = ts::random_catalog(rng, 50);
    const auto all = ts::ids_of(catalog);
    Evaluator ev(catalog, registry);
    auto eval = [&](const query::NodePtr& n, const ts::Ids& scope) { return ev.evaluate(query::Query{n}, scope).ids; };
    for (int q = 0; q < 100; ++q) {
      const auto ast = ts::random_query(rng, 4, false);
      const auto label = query::print(ast);
      const auto full = eval(ast, all);
      c.check(full == ts::oracle_eval(ast, all, catalog), "oracle mismatch: " + label);
      const auto view = random_subset(rng, all);
      c.check(eval(ast, view) == intersect(full, view), "scope law: " + label);
    }
    for (int q = 0; q < 10; ++q) {
      const auto a = ts::random_query(rng, 3, true);
      const auto b = ts::random_query(rng, 3, true);
      const auto scope = random_subset(rng, all);
      const auto ea = eval(a, scope);
      const auto na = eval(query::not_(a), scope);
      ts::Ids cover = na;
      cover.insert(ea.begin(), ea.end());
      c.check(intersect(na, ea).empty() && cover == scope, "complement: " + query::print(a));
      c.check(eval(query::not_(query::group(query::and_(a, b))), scope) ==
                  eval(query::or_(query::not_(a), query::not_(b)), scope),
              "De Morgan (and)");
      c.check(eval(query::not_(query::group(query::or_(a, b))), scope) ==
                  eval(query::and_(query::not_(a), query::not_(b)), scope),
              "De Morgan (or)");
    }
  }
}

void ranking(Checker& c) {
  ts::Rng rng(555);
  for (int i = 0; i < 100; ++i) {
    auto in = ts::random_rank_instance(rng);
    std::vector<ts::OracleRankInput> oracle_in;
    for (const auto& r : in.inputs) oracle_in.push_back({r.artifact_id, r.providers});
    const auto want = ts::oracle_rank(oracle_in, in.catalog, in.doc, in.global);
    const auto got = score_all(in.inputs, in.catalog, in.doc, in.global);
    bool same = got.size() == want.size();
    for (std::size_t j = 0; same && j < got.size(); ++j) {
      same = got[j].artifact_id == want[j].id && got[j].value == want[j].value;
    }
    c.check(same, "instance " + std::to_string(i) + " differs from score-and-sort");

    const double factors[] = {0.125, 0.5, 2.0, 3.0, 1024.0};
    const double f = factors[rng() % std::size(factors)];
    for (auto& p : in.doc.providers) {
      if (p.ranking) {
        for (auto& e : p.ranking->entries) e.weight *= f;
      }
    }
    if (in.global) {
      for (auto& e : in.global->entries) e.weight *= f;
    }
    c.check(rank(in.inputs, in.catalog, in.doc, in.global) ==
                [&] {
                  std::vector<std::string> ids;
                  for (const auto& s : got) ids.push_back(s.artifact_id);
                  return ids;
                }(),
            "rescaling by " + std::to_string(f) + " changed the order");
  }

  DataArtifact a;
  a.id = "a";
  a.kind = "table";
  a.fields = {{"favorite", true}, {"views", 10.0}};
  const RankingWeights w{{{"favorite", 4.3}, {"views", 1.5}}};
  const double s = score_artifact(a, w).value;
  c.check(std::abs(s - 19.3) <= 1e-9, "listing score " + std::to_string(s));
}

struct RestHarness {
  ts::MockProviderServer mock;
  std::filesystem::path state;
  std::shared_ptr<DiscoveryService> service;
  std::unique_ptr<RestServer> server;
  std::unique_ptr<httplib::Client> client;

  RestHarness() {
    mock.reply("team", json::parse(R"({"representation": "LIST", "items": ["AIRLINES_id", "wb_revenue"]})"));
    mock.reply("shared", json::parse(R"({"representation": "CATEGORIES", "categories": {"From Alex": ["wb_marketing"]}})"));
    mock.reply("recommended", json::parse(R"({"representation": "LIST", "items": ["FLIGHTS_id"]})"));
    state = std::filesystem::temp_directory_path() / ("humboldt-acceptance-" + std::to_string(::getpid()) + ".json");
    std::filesystem::remove(state);
    ServiceOptions options;
    options.registry = {make_http_transport(mock.base_url()), 1000ms};
    options.state_file = state;
    service = std::make_shared<DiscoveryService>(ts::fixture_spec(), ts::fixture_catalog(), options);
    server = std::make_unique<RestServer>(service);
    client = std::make_unique<httplib::Client>("127.0.0.1", server->start());
    client->set_read_timeout(5, 0);
  }
  ~RestHarness() {
    server->stop();
    std::filesystem::remove(state);
  }

  httplib::Headers headers(const std::string& role) const {
    return {{"X-Humboldt-User", role == "team-admin" ? "lea" : "ana"}, {"X-Humboldt-Role", role},
            {"X-Humboldt-Team", "A Team"}};
  }
  std::pair<int, json> get(const std::string& path, const std::string& role = "user") {
    auto res = client->Get(path, headers(role));
    if (!res) return {-1, nullptr};
    return {res->status, json::parse(res->body, nullptr, false)};
  }
  std::pair<int, json> put(const std::string& path, const std::string& body, const std::string& role) {
    auto res = client->Put(path, headers(role), body, "application/json");
    if (!res) return {-1, nullptr};
    return {res->status, json::parse(res->body, nullptr, false)};
  }
};

std::set<std::string> payload_ids(const json& view) {
  std::set<std::string> out;
  if (!view.contains("payload")) return out;
  for (const auto& item : view["payload"]["items"]) out.insert(item["id"].get<std::string>());
  return out;
}

const json* view_named(const json& body, const std::string& name) {
  for (const auto& v : body["views"]) {
    if (v["provider"]["name"] == name) return &v;
  }
  return nullptr;
}

void study_tasks(Checker& c) {
  RestHarness h;

  // Find a table by name and through the endorsed list.
  auto [s1, search] = h.get("/api/search?q=AIRLINES");
  c.check(s1 == 200 && search["ids"] == json::array({"AIRLINES_id"}), "search AIRLINES");
  auto [s2, endorsed] = h.get("/api/views/badged/Endorsed");
  c.check(s2 == 200 && payload_ids(endorsed).count("AIRLINES_id"), "endorsed view lacks AIRLINES");

  // Related artifacts of the table.
  auto [s3, related] = h.get("/api/artifacts/AIRLINES_id/related");
  c.check(s3 == 200, "related status");
  const json* same_kind = view_named(related, "Type");
  const json* same_badge = view_named(related, "Badged");
  c.check(same_kind && payload_ids(*same_kind) == std::set<std::string>{"AIRLINES_id", "FLIGHTS_id", "PAYROLL_id"},
          "same-kind view");
  c.check(same_badge && payload_ids(*same_badge) == std::set<std::string>{"AIRLINES_id", "viz_ontime"},
          "same-badge view");

  // Workbooks of one owner.
  auto [s4, wbs] = h.get("/api/search?q=" + httplib::detail::encode_query_param("type: workbook owned_by: 'John Doe'"));
  std::set<std::string> got;
  for (const auto& id : wbs["ids"]) got.insert(id.get<std::string>());
  c.check(s4 == 200 && got == std::set<std::string>{"wb_revenue", "wb_fleet"}, "John Doe workbooks");

  // Team home page edited by the team admin.
  auto [s5, stored] = h.put("/api/config/team", R"({"home_providers": ["Recommended", "Endorsed"]})", "team-admin");
  c.check(s5 == 200, "team home update status " + std::to_string(s5));
  auto [s6, home] = h.get("/api/overviews");
  std::vector<std::string> names;
  for (const auto& v : home["views"]) names.push_back(v["provider"]["name"]);
  c.check(s6 == 200 && names == std::vector<std::string>{"Recommended", "Endorsed"}, "overviews after update");
}

void provider_protocol(Checker& c) {
  ts::MockProviderServer mock;
  const auto catalog = ts::fixture_catalog();
  const auto doc = parse_spec(ts::assemble_document({ts::read_fixture("joinable_provider.json")}));
  const auto registry = register_providers(doc, {make_http_transport(mock.base_url()), 250ms});
  const auto& provider = registry.providers().at(0);
  const InputBinding binding{{{InputType::TableId, "AIRLINES_id"}}};
  const std::string endpoint = "api/name_joinability";

  mock.reply(endpoint, json::parse(R"({"representation": "GRAPH", "items": ["AIRLINES_id"],
      "edges": [{"from": "AIRLINES_id", "to": "FLIGHTS_id", "label": "carrier_id"}]})"));
  try {
    const auto p = fetch(registry, provider, binding, *catalog);
    c.check(p.ids() == IdSet{"AIRLINES_id", "FLIGHTS_id"} && p.edges.size() == 1, "success payload");
    c.check(mock.last_request(endpoint)["input"]["TABLEID"] == "AIRLINES_id", "request body");
  } catch (const std::exception& e) {
    c.check(false, std::string("success: ") + e.what());
  }

  mock.reply(endpoint, json::parse(R"({"representation": "LIST", "items": ["AIRLINES_id"]})"));
  c.expect_throw("RepresentationMismatch", "mismatch", [&] { fetch(registry, provider, binding, *catalog); });

  mock.reply(endpoint, json::parse(R"({"representation": "GRAPH", "items": ["AIRLINES_id", "ghost"]})"));
  c.expect_throw("DanglingArtifact", "dangling", [&] { fetch(registry, provider, binding, *catalog); });

  mock.stall(endpoint, 3000ms);
  const auto start = std::chrono::steady_clock::now();
  c.expect_throw("ProviderUnavailable", "timeout", [&] { fetch(registry, provider, binding, *catalog); });
  c.check(std::chrono::steady_clock::now() - start < 2000ms, "timeout not enforced");

  // One failing provider does not take the page down.
  ts::MockProviderServer home;
  home.reply_raw("team", 500, "");
  home.stall("shared", 3000ms);
  home.reply("recommended", json::parse(R"({"representation": "LIST", "items": ["FLIGHTS_id"]})"));
  ServiceOptions options;
  options.registry = {make_http_transport(home.base_url()), 250ms};
  DiscoveryService service(ts::fixture_spec(), catalog, options);
  const auto views = service.overviews(UserConfig{"ana", "A Team", {}, std::nullopt});
  std::vector<std::string> states;
  for (const auto& v : views) states.push_back(v.spec.name + ":" + (v.error ? v.error->code : "ok"));
  c.check(states == std::vector<std::string>{"Team:ProviderUnavailable", "Favorites:ok", "Shared:ProviderUnavailable"},
          "overview isolation");
}

void headless(Checker& c) {
  RestHarness h;
  const std::vector<std::string> paths = {
      "/api/providers",
      "/api/providers?surface=search",
      "/api/overviews",
      "/api/search?q=bit",
      "/api/suggest?q=own",
      "/api/parse?q=a%20%7C%20b",
      "/api/views/favorites/Favorites?q=table",
      "/api/artifacts/AIRLINES_id",
      "/api/artifacts/AIRLINES_id/related",
      "/api/config/user",
      "/api/config/team",
  };
  for (const auto& p : paths) {
    auto [status, body] = h.get(p);
    c.check(status == 200 && body.is_object(), p + " -> " + std::to_string(status));
  }
}

}  // namespace
}  // namespace humboldt

int main() {
  using namespace humboldt;
  const std::vector<Criterion> criteria = {
      {"spec-conformance", 1000ms, spec_conformance},
      {"query-grammar", 5000ms, grammar},
      {"set-semantics", 30000ms, set_semantics},
      {"ranking", 5000ms, ranking},
      {"study-tasks", 5000ms, study_tasks},
      {"provider-protocol", 10000ms, provider_protocol},
      {"headless-api", 10000ms, headless},
  };
  int failures = 0;
  for (const auto& criterion : criteria) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(checker);
    } catch (const std::exception& e) {
      checker.check(false, std::string("uncaught: ") + e.what());
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    const bool in_time = elapsed <= criterion.budget;
    const bool pass = checker.ok() && in_time;
    if (!pass) ++failures;
    std::cout << (pass ? "PASS " : "FAIL ") << criterion.name << " (" << elapsed.count() << " ms, budget "
              << criterion.budget.count() << " ms)";
    if (!checker.ok()) std::cout << ": " << checker.summary();
    if (!in_time) std::cout << ": over budget";
    std::cout << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
