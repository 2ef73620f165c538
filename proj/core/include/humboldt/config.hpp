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
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "humboldt/spec.hpp"
#include "json.hpp"

namespace humboldt {

enum class Role { Admin, TeamAdmin, User };

std::string_view to_string(Role role);
std::optional<Role> parse_role(std::string_view s);

// Who is calling. Authentication is out of scope; the REST layer fills this
// from request headers.
struct Caller {
  std::string user_id = "anonymous";
  Role role = Role::User;
  std::optional<std::string> team;
};

struct UserConfig {
  std::string user_id;
  std::optional<std::string> team;
  std::set<ProviderKey> hidden_providers;
  std::optional<std::vector<ProviderKey>> provider_order;

  bool operator==(const UserConfig&) const = default;
};

struct TeamConfig {
  std::string team;
  std::vector<ProviderKey> home_providers;

  bool operator==(const TeamConfig&) const = default;
};

struct AdminConfig {
  std::set<ProviderKey> disabled_providers;

  bool operator==(const AdminConfig&) const = default;
};

struct ConfigState {
  AdminConfig admin;
  std::map<std::string, TeamConfig> teams;
  std::map<std::string, UserConfig> users;

  UserConfig user(std::string_view user_id) const;
  bool operator==(const ConfigState&) const = default;
};

nlohmann::json to_json(const ProviderKey& key);
nlohmann::json to_json(const UserConfig& config);
nlohmann::json to_json(const TeamConfig& config);
nlohmann::json to_json(const AdminConfig& config);
nlohmann::json to_json(const ConfigState& state);
// Throws SchemaError on a malformed state document.
ConfigState config_from_json(const nlohmann::json& j);

// Holds the current ConfigState. Readers take an immutable snapshot; writers
// are serialized, persist the new state (write to a temporary file, then
// rename over the target) and only then publish it.
class ConfigStore {
 public:
  explicit ConfigStore(std::optional<std::filesystem::path> state_file = std::nullopt);

  std::shared_ptr<const ConfigState> snapshot() const;
  std::shared_ptr<const ConfigState> update(const std::function<void(ConfigState&)>& mutate);

  const std::optional<std::filesystem::path>& state_file() const noexcept { return state_file_; }

 private:
  void persist(const ConfigState& state) const;

  std::optional<std::filesystem::path> state_file_;
  mutable std::mutex read_mutex_;
  std::mutex write_mutex_;
  std::shared_ptr<const ConfigState> current_;
};

}  // namespace humboldt
