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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "humboldt/evaluate.hpp"
#include "humboldt/providers.hpp"
#include "humboldt/query.hpp"

namespace {

humboldt::CatalogSnapshot make_catalog(int n) {
  std::vector<humboldt::DataArtifact> artifacts;
  const char* kinds[] = {"table", "workbook", "dashboard"};
  for (int i = 0; i < n; ++i) {
    humboldt::DataArtifact a;
    a.id = "a" + std::to_string(i);
    a.kind = kinds[i % 3];
    a.name = "artifact " + std::to_string(i);
    a.fields["owner"] = std::string("user") + std::to_string(i % 17);
    a.fields["views"] = static_cast<double>(i % 100);
    a.fields["favorite"] = i % 7 == 0;
    if (i % 5 == 0) a.fields["badge"] = humboldt::TextList{"endorsed"};
    artifacts.push_back(std::move(a));
  }
  return humboldt::CatalogSnapshot(std::move(artifacts));
}

const humboldt::SpecDocument& spec() {
  static const auto doc = humboldt::parse_spec(R"({"providers": [
    {"type": "favorites", "name": "Favorites", "representation": "LIST"},
    {"type": "badged", "name": "Endorsed", "representation": "LIST"}]})");
  return doc;
}

void BM_EvaluateFields(benchmark::State& state) {
  const auto catalog = make_catalog(static_cast<int>(state.range(0)));
  const auto registry = humboldt::register_providers(spec());
  const auto query = humboldt::query::parse_query("type: table & owned_by: user3 | artifact & !views: 5");
  const auto scope = humboldt::all_ids(catalog);
  for (auto _ : state) benchmark::DoNotOptimize(humboldt::evaluate(query, scope, catalog, registry));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvaluateFields)->Range(64, 16384);

void BM_EvaluateProviderCalls(benchmark::State& state) {
  const auto catalog = make_catalog(static_cast<int>(state.range(0)));
  const auto registry = humboldt::register_providers(spec());
  const auto query = humboldt::query::parse_query(":favorites | :endorsed & type: workbook");
  const auto scope = humboldt::all_ids(catalog);
  for (auto _ : state) benchmark::DoNotOptimize(humboldt::evaluate(query, scope, catalog, registry));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvaluateProviderCalls)->Range(64, 16384);

}  // namespace
