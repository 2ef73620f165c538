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

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "humboldt/catalog.hpp"
#include "humboldt/config.hpp"
#include "humboldt/evaluate.hpp"
#include "humboldt/payload.hpp"
#include "humboldt/providers.hpp"
#include "humboldt/ranking.hpp"
#include "humboldt/spec.hpp"
#include "humboldt/suggest.hpp"
#include "json.hpp"

namespace humboldt {

struct ViewError {
  std::string code;
  std::string message;

  bool operator==(const ViewError&) const = default;
};

// One rendered provider: either a payload or the error that replaced it.
struct View {
  ProviderSpec spec;
  std::optional<RepresentationPayload> payload;
  std::optional<ViewError> error;
};

struct SearchResults {
  std::vector<std::string> ids;
  std::vector<Score> scores;  // same order as ids
};

enum class ConfigScope { Admin, Team, User };

struct ConfigTarget {
  ConfigScope scope = ConfigScope::User;
  std::string name;  // team name or user id; unused for Admin
};

struct ServiceOptions {
  RegistryOptions registry;
  std::optional<std::filesystem::path> state_file;
};

// Orchestrates overviews, exploration, search, view filtering and
// configuration over one spec document. The catalog snapshot can be replaced
// at any time; each request works on the snapshot current when it started.
class DiscoveryService {
 public:
  DiscoveryService(SpecDocument doc, CatalogPtr catalog, ServiceOptions options = {});

  const SpecDocument& spec() const noexcept { return doc_; }
  const ProviderRegistry& registry() const noexcept { return registry_; }
  CatalogPtr catalog() const;
  void replace_catalog(CatalogPtr catalog);

  UserConfig user_config(std::string_view user_id) const;
  // Team page for a team: the configured one, else the spec's "home" content.
  std::optional<std::vector<ProviderKey>> team_home(std::string_view team) const;

  // Visible on surface, not disabled by the admin, not hidden by the user.
  std::vector<ProviderSpec> providers_for(const UserConfig& user, Surface surface) const;

  std::vector<View> overviews(const UserConfig& user) const;
  std::vector<View> overviews(std::string_view user_id) const { return overviews(user_config(user_id)); }

  // Throws UnknownArtifactError.
  std::vector<View> explore(std::string_view artifact_id, const UserConfig& user) const;
  std::vector<View> explore(std::string_view artifact_id, std::string_view user_id) const {
    return explore(artifact_id, user_config(user_id));
  }

  // Global search over the whole catalog, ranked with the global weights and
  // the weights of every provider call that contributed a result. Throws
  // LexError/ParseError and evaluation errors.
  SearchResults search(std::string_view query_text, const UserConfig& user) const;
  SearchResults search(std::string_view query_text, std::string_view user_id) const {
    return search(query_text, user_config(user_id));
  }

  // Fetches one provider and restricts its payload to the artifacts matching
  // the query. An empty query returns the payload untouched.
  View filter_view(const ProviderKey& key, std::string_view query_text, const InputBinding& binding,
                   const UserConfig& user) const;

  std::vector<Suggestion> suggest(std::string_view partial, std::size_t cursor, const UserConfig& user) const;

  nlohmann::json get_config(const Caller& caller, const ConfigTarget& target) const;
  // Validates provider references against the registry, persists, and
  // returns the stored config. Throws UnauthorizedScopeError,
  // UnknownProviderReferenceError or SchemaError.
  nlohmann::json update_config(const Caller& caller, const ConfigTarget& target, const nlohmann::json& change);

  std::shared_ptr<const ConfigState> config_state() const { return config_.snapshot(); }

 private:
  bool allowed(const ProviderSpec& spec, const UserConfig& user, const ConfigState& state) const;
  std::vector<const ProviderHandle*> order_for(std::vector<const ProviderHandle*> providers,
                                               const UserConfig& user) const;
  std::vector<View> fetch_views(const std::vector<const ProviderHandle*>& providers, const DataArtifact* selection,
                                const CatalogSnapshot& snapshot) const;
  ProviderKey resolve_reference(const nlohmann::json& ref, const std::string& path) const;
  std::vector<ProviderKey> resolve_references(const nlohmann::json& refs, const std::string& path) const;

  SpecDocument doc_;
  ProviderRegistry registry_;
  ResolvedContent home_content_;
  ConfigStore config_;
  mutable std::mutex catalog_mutex_;
  CatalogPtr catalog_;
};

nlohmann::json to_json(const View& view);

}  // namespace humboldt
