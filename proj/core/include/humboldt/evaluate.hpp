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

#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "humboldt/catalog.hpp"
#include "humboldt/payload.hpp"
#include "humboldt/providers.hpp"
#include "humboldt/query.hpp"

namespace humboldt {

// What a field name in a query refers to. The textual language uses
// underscore identifiers; a few of them name artifact attributes or alias
// metadata fields:
//   type, kind  -> artifact kind
//   name        -> artifact name
//   owned_by    -> owner
//   badged_by   -> badge
// Every other name is a metadata field.
struct FieldRef {
  enum class Target { Kind, Name, Metadata };

  Target target = Target::Metadata;
  std::string metadata_field;
};

FieldRef resolve_field(std::string_view name);

// Case-insensitive equality against the referenced value; membership for text
// lists; numeric equality for numbers; "true"/"false" for booleans; epoch
// seconds for timestamps.
bool field_matches(const DataArtifact& artifact, const FieldRef& field, std::string_view value);

struct ResultSet {
  IdSet ids;
  IdSet scope;
};

// Extra gate applied after search-surface visibility, e.g. providers a user
// hid or an admin disabled. Returning false makes the provider unknown.
using ProviderFilter = std::function<bool(const ProviderSpec&)>;

// Evaluates queries over one snapshot. Provider results are fetched once per
// (provider, binding) and reused across evaluate() calls on the same object;
// the calls of one query are fetched concurrently before set combination.
class Evaluator {
 public:
  Evaluator(const CatalogSnapshot& snapshot, const ProviderRegistry& registry, ProviderFilter filter = {});

  // Throws UnknownProviderError, MissingInputError and fetch errors.
  ResultSet evaluate(const query::Query& query, const IdSet& scope);

  // Full (unscoped) result ids of every provider call evaluated so far.
  const std::map<ProviderKey, IdSet>& provider_hits() const noexcept { return hits_; }

 private:
  struct CallTarget {
    const ProviderHandle* provider;
    InputBinding binding;
  };

  const ProviderHandle& resolve(const query::ProviderCall& call) const;
  CallTarget target_for(const query::ProviderCall& call) const;
  void prefetch(const query::NodePtr& root);
  const IdSet& call_result(const query::ProviderCall& call);
  IdSet eval(const query::Node& node, const IdSet& scope);

  const CatalogSnapshot& snapshot_;
  const ProviderRegistry& registry_;
  ProviderFilter filter_;
  std::map<std::pair<ProviderKey, std::map<InputType, std::string>>, IdSet> cache_;
  std::map<ProviderKey, IdSet> hits_;
};

ResultSet evaluate(const query::Query& query, const IdSet& scope, const CatalogSnapshot& snapshot,
                   const ProviderRegistry& registry, ProviderFilter filter = {});

IdSet all_ids(const CatalogSnapshot& snapshot);

}  // namespace humboldt
