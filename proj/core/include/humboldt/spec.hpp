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

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "humboldt/lenient_json.hpp"

namespace humboldt {

enum class Representation { Tiles, List, Hierarchy, Graph, Categories, Embedding };

std::string_view to_string(Representation r);
std::optional<Representation> parse_representation(std::string_view s);

enum class InputType { TableId, UserId, Text };

std::string_view to_string(InputType t);
std::optional<InputType> parse_input_type(std::string_view s);

// UI surfaces a provider can be shown on.
enum class Surface { Discovery, Search, Exploration };

std::string_view to_string(Surface s);
std::optional<Surface> parse_surface(std::string_view s);

struct InputSlot {
  InputType input_type = InputType::Text;
  bool required = false;

  bool operator==(const InputSlot&) const = default;
};

struct RankingEntry {
  std::string field;
  double weight = 0.0;

  bool operator==(const RankingEntry&) const = default;
};

struct RankingWeights {
  std::vector<RankingEntry> entries;

  bool empty() const noexcept { return entries.empty(); }
  bool operator==(const RankingWeights&) const = default;
};

// Identity of a provider: category plus display name.
struct ProviderKey {
  std::string type;
  std::string name;

  auto operator<=>(const ProviderKey&) const = default;
  std::string to_string() const { return type + "/" + name; }
};

struct ProviderSpec {
  std::string type;
  std::string name;
  std::string description;
  Representation representation = Representation::List;
  std::vector<InputSlot> inputs;
  // Absent for providers implemented in-process.
  std::optional<std::string> endpoint;
  // Absent map and absent keys both mean "visible".
  std::optional<std::map<std::string, bool>> visible;
  std::optional<RankingWeights> ranking;

  ProviderKey key() const { return {type, name}; }
  bool requires_input(InputType t) const;
  bool operator==(const ProviderSpec&) const = default;
};

struct TeamPage {
  std::string name;
  std::vector<std::string> data;  // provider names, display order

  bool operator==(const TeamPage&) const = default;
};

// One entry of the "custom" block. Sections whose field is "home" are
// interpreted as team pages; every other section is kept verbatim in content.
struct CustomContent {
  std::string field;
  std::vector<TeamPage> pages;
  OrderedJson content;

  bool is_home() const { return field == "home"; }
  bool operator==(const CustomContent&) const = default;
};

struct SpecDocument {
  std::vector<ProviderSpec> providers;
  std::optional<RankingWeights> global_ranking;
  std::vector<CustomContent> custom;
  // Unrecognised top-level keys, preserved for round-tripping.
  OrderedJson extensions = OrderedJson::object();

  const ProviderSpec* find(const ProviderKey& key) const;
  bool operator==(const SpecDocument&) const = default;
};

// Throws SyntaxError or SchemaError; both carry the path of the offending
// element, e.g. "providers[0].representation".
SpecDocument parse_spec(std::string_view text);

OrderedJson to_json(const SpecDocument& doc);
OrderedJson to_json(const ProviderSpec& spec);
OrderedJson to_json(const RankingWeights& weights);
std::string serialize_spec(const SpecDocument& doc);

struct Violation {
  enum class Kind {
    DuplicateProviderName,
    EmptyEndpoint,
    EmptyProviderType,
    EmptyProviderName,
    DuplicateRankingField,
    EmptyRankingField,
    NonFiniteWeight,
  };

  Kind kind;
  std::string path;
  std::string message;
};

std::string_view to_string(Violation::Kind k);

// Semantic checks that the parser does not enforce. Empty result means valid.
std::vector<Violation> validate_spec(const SpecDocument& doc);

struct ContentWarning {
  enum class Kind { UnresolvedReference, AmbiguousReference };

  Kind kind;
  std::string team;
  std::string reference;
};

struct ResolvedContent {
  std::map<std::string, std::vector<ProviderSpec>> pages;
  std::vector<ContentWarning> warnings;
};

// Resolves the provider names listed on each "home" team page. Unknown names
// are dropped with an UnresolvedReference warning; a name shared by several
// provider types resolves to the first in document order and warns.
ResolvedContent resolve_custom_content(const SpecDocument& doc);

bool effective_visibility(const ProviderSpec& spec, Surface surface);

}  // namespace humboldt
