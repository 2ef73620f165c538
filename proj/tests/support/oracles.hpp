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

// Brute-force reference implementations and random generators. Nothing here
// calls into the engine's evaluation or ranking code.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "humboldt/catalog.hpp"
#include "humboldt/query.hpp"
#include "humboldt/ranking.hpp"
#include "humboldt/spec.hpp"

namespace humboldt::testing {

using Rng = std::mt19937_64;
using Ids = std::set<std::string>;

// Built-in providers the random queries may call: favorites, endorsed,
// owned_by(user), type(kind), recent_documents.
SpecDocument oracle_spec();

CatalogSnapshot random_catalog(Rng& rng, std::size_t max_artifacts = 50);
query::NodePtr random_query(Rng& rng, int depth, bool allow_not);
// Arbitrary printable text, including quotes, backslashes and spaces.
std::string random_text(Rng& rng);

Ids oracle_eval(const query::NodePtr& node, const Ids& scope, const CatalogSnapshot& snapshot);
Ids ids_of(const CatalogSnapshot& snapshot);

struct OracleRankInput {
  std::string id;
  std::vector<ProviderKey> providers;
};
struct OracleScore {
  std::string id;
  double value;
};
// Score-and-sort by the definition: per provider, sum weight * value over its
// weight entries; providers without weights fall back to the global block.
std::vector<OracleScore> oracle_rank(const std::vector<OracleRankInput>& inputs, const CatalogSnapshot& snapshot,
                                     const SpecDocument& doc, const std::optional<RankingWeights>& global);

struct RankInstance {
  CatalogSnapshot catalog;
  SpecDocument doc;
  std::optional<RankingWeights> global;
  std::vector<RankInput> inputs;
};

// Weights are multiples of 1/8 and values small integers, so every sum is
// exact and rescaling by a power of two or a small integer stays exact.
RankInstance random_rank_instance(Rng& rng);

}  // namespace humboldt::testing
