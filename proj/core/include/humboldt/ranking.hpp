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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "humboldt/catalog.hpp"
#include "humboldt/spec.hpp"

namespace humboldt {

struct Score {
  double value = 0.0;
  std::string artifact_id;

  bool operator==(const Score&) const = default;
};

// Total order: higher value first, then ascending id.
bool ranks_before(const Score& a, const Score& b);

// The provider's own ranking block, else the global one, else no weights.
RankingWeights effective_weights(const ProviderSpec& spec, const std::optional<RankingWeights>& global);

// Numeric reading of a metadata value for weighting: numbers as-is, booleans
// 1/0, everything else (text, lists, timestamps) 0.
double numeric_value(const MetadataValue& value);

// Sum of weight * numeric(field) over the weight entries, in entry order.
Score score_artifact(const DataArtifact& artifact, const RankingWeights& weights);

struct RankInput {
  std::string artifact_id;
  // Providers whose results contained the artifact. Empty means the artifact
  // came from a plain search and is scored once under the global weights.
  std::vector<ProviderKey> providers;
};

// Combined value per artifact = sum over contributing providers of its score
// under that provider's effective weights. Repeated ids merge their
// providers. Providers missing from doc fall back to the global weights.
// Ids are expected to resolve in snapshot; unresolved ids score 0.
std::vector<Score> score_all(std::span<const RankInput> results, const CatalogSnapshot& snapshot,
                             const SpecDocument& doc, const std::optional<RankingWeights>& global);

std::vector<std::string> rank(std::span<const RankInput> results, const CatalogSnapshot& snapshot,
                              const SpecDocument& doc, const std::optional<RankingWeights>& global);

}  // namespace humboldt
