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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "humboldt/catalog.hpp"
#include "humboldt/spec.hpp"
#include "json.hpp"

namespace humboldt {

using IdSet = std::set<std::string>;

struct PayloadItem {
  std::string id;
  // Free-form display annotations; never interpreted by the engine.
  std::map<std::string, std::string> annotations;

  bool operator==(const PayloadItem&) const = default;
};

struct Edge {
  std::string from;
  std::string to;
  std::string label;

  bool operator==(const Edge&) const = default;
};

// A provider result. Only the member matching `representation` may be
// non-empty: edges for GRAPH, children for HIERARCHY, categories for
// CATEGORIES, positions for EMBEDDING. `items` lists every artifact the
// payload refers to, in provider order.
struct RepresentationPayload {
  Representation representation = Representation::List;
  std::vector<PayloadItem> items;
  std::vector<Edge> edges;
  std::map<std::string, std::vector<std::string>> children;
  std::map<std::string, std::vector<std::string>> categories;
  std::map<std::string, Position> positions;

  IdSet ids() const;
  std::vector<std::string> ordered_ids() const;
  bool operator==(const RepresentationPayload&) const = default;
};

// Decodes a wire payload and checks it against the declared representation and
// the active snapshot. Ids referenced only by edges/children/categories/positions
// are appended to items. Throws RepresentationMismatchError,
// DanglingArtifactError or MalformedPayloadError.
RepresentationPayload decode_payload(const nlohmann::json& body, Representation declared,
                                     const CatalogSnapshot& snapshot);

// Same invariants for payloads built in-process.
void check_payload(const RepresentationPayload& payload, Representation declared, const CatalogSnapshot& snapshot);

nlohmann::json to_json(const RepresentationPayload& payload);

// Restricts a payload to `keep`. Edges, categories and positions lose entries
// that mention dropped ids; empty categories disappear. In a HIERARCHY a node
// survives only if it is kept and reachable from a kept root through kept
// nodes, so orphaned subtrees are dropped rather than re-attached.
RepresentationPayload prune_payload(const RepresentationPayload& payload, const IdSet& keep);

}  // namespace humboldt
