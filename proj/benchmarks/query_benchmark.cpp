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

#include "humboldt/query.hpp"

namespace {

std::string long_query(int terms) {
  std::string q;
  for (int i = 0; i < terms; ++i) {
    if (i) q += (i % 3 == 0) ? " | " : " & ";
    q += (i % 4 == 0) ? "owned_by: 'user " + std::to_string(i) + "'" : (i % 5 == 0) ? ":favorites()" : "word" + std::to_string(i);
  }
  return q;
}

void BM_ParseQuery(benchmark::State& state) {
  const auto q = long_query(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(humboldt::query::parse_query(q));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * q.size()));
}
BENCHMARK(BM_ParseQuery)->Range(4, 512);

void BM_PrintQuery(benchmark::State& state) {
  const auto parsed = humboldt::query::parse_query(long_query(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(humboldt::query::print(parsed));
}
BENCHMARK(BM_PrintQuery)->Range(4, 512);

}  // namespace
