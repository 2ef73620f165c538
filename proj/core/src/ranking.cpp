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

#include "humboldt/ranking.hpp"

#include <algorithm>
#include <map>

namespace humboldt {

bool ranks_before(const Score& a, const Score& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.artifact_id < b.artifact_id;
}

RankingWeights effective_weights(const ProviderSpec& spec, const std::optional<RankingWeights>& global) {
  if (spec.ranking) return *spec.ranking;
  if (global) return *global;
  return {};
}

double numeric_value(const MetadataValue& value) {
  if (const auto* d = std::get_if<double>(&value)) return *d;
  if (const auto* b = std::get_if<bool>(&value)) return *b ? 1.0 : 0.0;
  return 0.0;
}

Score score_artifact(const DataArtifact& artifact, const RankingWeights& weights) {
  Score s{0.0, artifact.id};
  for (const auto& entry : weights.entries) {
    if (const auto* v = artifact.field(entry.field)) s.value += entry.weight * numeric_value(*v);
  }
  return s;
}

std::vector<Score> score_all(std::span<const RankInput> results, const CatalogSnapshot& snapshot,
                             const SpecDocument& doc, const std::optional<RankingWeights>& global) {
  // Merge duplicates while keeping first-seen provider order.
  std::map<std::string, std::vector<ProviderKey>> merged;
  for (const auto& r : results) {
    auto& providers = merged[r.artifact_id];
    providers.insert(providers.end(), r.providers.begin(), r.providers.end());
  }

  const RankingWeights global_weights = global.value_or(RankingWeights{});
  std::vector<Score> scores;
  scores.reserve(merged.size());
  for (const auto& [id, providers] : merged) {
    auto it = snapshot.artifacts().find(id);
    if (it == snapshot.artifacts().end()) {
      scores.push_back({0.0, id});
      continue;
    }
    const auto& artifact = it->second;
    Score total{0.0, id};
    if (providers.empty()) {
      total.value = score_artifact(artifact, global_weights).value;
    }
    for (const auto& key : providers) {
      const auto* spec = doc.find(key);
      const auto weights = spec ? effective_weights(*spec, global) : global_weights;
      total.value += score_artifact(artifact, weights).value;
    }
    scores.push_back(std::move(total));
  }
  std::sort(scores.begin(), scores.end(), ranks_before);
  return scores;
}

std::vector<std::string> rank(std::span<const RankInput> results, const CatalogSnapshot& snapshot,
                              const SpecDocument& doc, const std::optional<RankingWeights>& global) {
  auto scores = score_all(results, snapshot, doc, global);
  std::vector<std::string> out;
  out.reserve(scores.size());
  for (auto& s : scores) out.push_back(std::move(s.artifact_id));
  return out;
}

}  // namespace humboldt
