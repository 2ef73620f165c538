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

#include "humboldt/ranking.hpp"

namespace {

void BM_Rank(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<humboldt::DataArtifact> artifacts;
  std::vector<humboldt::RankInput> inputs;
  humboldt::SpecDocument doc;
  doc.providers.push_back({"favorites", "Favorites"});
  doc.providers.push_back({"recommended", "Recommended"});
  doc.providers.back().ranking = humboldt::RankingWeights{{{"views", 2.0}}};
  for (int i = 0; i < n; ++i) {
    humboldt::DataArtifact a;
    a.id = "a" + std::to_string(i);
    a.kind = "table";
    a.fields["views"] = static_cast<double>((i * 7919) % 1000);
    a.fields["favorite"] = i % 3 == 0;
    inputs.push_back({a.id, {}});
    if (i % 2) inputs.back().providers.push_back(doc.providers[i % 4 == 1 ? 0 : 1].key());
    artifacts.push_back(std::move(a));
  }
  const humboldt::CatalogSnapshot catalog(std::move(artifacts));
  const humboldt::RankingWeights global{{{"favorite", 4.3}, {"views", 1.5}}};
  for (auto _ : state) benchmark::DoNotOptimize(humboldt::rank(inputs, catalog, doc, global));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Rank)->Range(64, 65536);

}  // namespace
