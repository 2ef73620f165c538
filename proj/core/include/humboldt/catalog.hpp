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

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace humboldt {

// Metadata field names the engine itself interprets.
namespace field_names {
inline constexpr std::string_view kOwner = "owner";
inline constexpr std::string_view kBadge = "badge";
inline constexpr std::string_view kCreatedAt = "created_at";
inline constexpr std::string_view kFavorite = "favorite";
}  // namespace field_names

// UTC epoch seconds. Serialised as {"ts": <seconds>}.
struct Timestamp {
  std::int64_t seconds = 0;

  auto operator<=>(const Timestamp&) const = default;
};

using TextList = std::vector<std::string>;
using MetadataValue = std::variant<double, std::string, bool, TextList, Timestamp>;

struct Position {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Position&) const = default;
};

struct DataArtifact {
  std::string id;
  std::string kind;  // "table", "workbook", "dashboard", ...
  std::string name;
  std::map<std::string, MetadataValue> fields;
  std::optional<std::vector<std::string>> columns;
  std::optional<Position> position;

  bool is_table() const { return kind == "table"; }
  const MetadataValue* field(std::string_view name) const;
  // The "owner" text field, when present.
  std::optional<std::string> owner() const;
  bool operator==(const DataArtifact&) const = default;
};

// Immutable set of artifacts. Shared between readers via shared_ptr; a catalog
// reload builds a new snapshot with a higher version.
class CatalogSnapshot {
 public:
  CatalogSnapshot() = default;
  // Throws DuplicateIdError if two artifacts share an id.
  CatalogSnapshot(std::vector<DataArtifact> artifacts, std::uint64_t version = 1);

  const std::map<std::string, DataArtifact>& artifacts() const noexcept { return artifacts_; }
  std::uint64_t version() const noexcept { return version_; }
  std::size_t size() const noexcept { return artifacts_.size(); }
  bool contains(std::string_view id) const;

  bool operator==(const CatalogSnapshot& other) const { return artifacts_ == other.artifacts_; }

 private:
  std::map<std::string, DataArtifact> artifacts_;
  std::uint64_t version_ = 0;
};

using CatalogPtr = std::shared_ptr<const CatalogSnapshot>;

// Parses the catalog file format. Throws SyntaxError, SchemaError or
// DuplicateIdError.
CatalogSnapshot load_catalog(std::string_view source, std::uint64_t version = 1);

nlohmann::json to_json(const MetadataValue& value);
nlohmann::json to_json(const DataArtifact& artifact);
std::string serialize_catalog(const CatalogSnapshot& snapshot);

std::optional<DataArtifact> get_artifact(const CatalogSnapshot& snapshot, std::string_view id);

// Case-insensitive substring match of the trimmed keyword against name, kind
// and every text or text-list field. An empty keyword matches everything.
bool keyword_match(const DataArtifact& artifact, std::string_view keyword);

// Textual rendering of a value for display and suggestions; booleans as
// "true"/"false", timestamps as epoch seconds.
std::string display_value(const MetadataValue& value);

}  // namespace humboldt
