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

#include "humboldt/config.hpp"

#include <fstream>
#include <sstream>

#include "humboldt/error.hpp"

namespace humboldt {

using nlohmann::json;

namespace {

ProviderKey key_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("type") || !j.contains("name") || !j["type"].is_string() ||
      !j["name"].is_string()) {
    throw SchemaError(path, "expected {\"type\": ..., \"name\": ...}");
  }
  return {j["type"].get<std::string>(), j["name"].get<std::string>()};
}

std::vector<ProviderKey> keys_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected array");
  std::vector<ProviderKey> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(key_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

template <class Range>
json keys_to_json(const Range& keys) {
  json arr = json::array();
  for (const auto& k : keys) arr.push_back(to_json(k));
  return arr;
}

}  // namespace

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Admin: return "admin";
    case Role::TeamAdmin: return "team-admin";
    case Role::User: return "user";
  }
  return "user";
}

std::optional<Role> parse_role(std::string_view s) {
  if (s == "admin") return Role::Admin;
  if (s == "team-admin") return Role::TeamAdmin;
  if (s == "user") return Role::User;
  return std::nullopt;
}

UserConfig ConfigState::user(std::string_view user_id) const {
  auto it = users.find(std::string(user_id));
  if (it != users.end()) return it->second;
  UserConfig config;
  config.user_id = std::string(user_id);
  return config;
}

json to_json(const ProviderKey& key) { return json{{"type", key.type}, {"name", key.name}}; }

json to_json(const UserConfig& c) {
  json j{{"user_id", c.user_id}, {"hidden_providers", keys_to_json(c.hidden_providers)}};
  j["team"] = c.team ? json(*c.team) : json(nullptr);
  j["provider_order"] = c.provider_order ? keys_to_json(*c.provider_order) : json(nullptr);
  return j;
}

json to_json(const TeamConfig& c) { return json{{"team", c.team}, {"home_providers", keys_to_json(c.home_providers)}}; }

json to_json(const AdminConfig& c) { return json{{"disabled_providers", keys_to_json(c.disabled_providers)}}; }

json to_json(const ConfigState& s) {
  json teams = json::object();
  for (const auto& [name, t] : s.teams) teams[name] = to_json(t);
  json users = json::object();
  for (const auto& [id, u] : s.users) users[id] = to_json(u);
  return json{{"admin", to_json(s.admin)}, {"teams", std::move(teams)}, {"users", std::move(users)}};
}

ConfigState config_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("$", "config state must be an object");
  ConfigState state;
  if (auto it = j.find("admin"); it != j.end() && it->contains("disabled_providers")) {
    for (auto& k : keys_from_json((*it)["disabled_providers"], "admin.disabled_providers")) {
      state.admin.disabled_providers.insert(std::move(k));
    }
  }
  if (auto it = j.find("teams"); it != j.end()) {
    if (!it->is_object()) throw SchemaError("teams", "expected object");
    for (const auto& [name, t] : it->items()) {
      TeamConfig tc;
      tc.team = name;
      if (t.contains("home_providers")) tc.home_providers = keys_from_json(t["home_providers"], "teams." + name);
      state.teams.emplace(name, std::move(tc));
    }
  }
  if (auto it = j.find("users"); it != j.end()) {
    if (!it->is_object()) throw SchemaError("users", "expected object");
    for (const auto& [id, u] : it->items()) {
      UserConfig uc;
      uc.user_id = id;
      const auto base = "users." + id;
      if (auto team = u.find("team"); team != u.end() && team->is_string()) uc.team = team->get<std::string>();
      if (auto hidden = u.find("hidden_providers"); hidden != u.end()) {
        for (auto& k : keys_from_json(*hidden, base + ".hidden_providers")) uc.hidden_providers.insert(std::move(k));
      }
      if (auto order = u.find("provider_order"); order != u.end() && !order->is_null()) {
        uc.provider_order = keys_from_json(*order, base + ".provider_order");
      }
      state.users.emplace(id, std::move(uc));
    }
  }
  return state;
}

ConfigStore::ConfigStore(std::optional<std::filesystem::path> state_file)
    : state_file_(std::move(state_file)), current_(std::make_shared<const ConfigState>()) {
  if (state_file_ && std::filesystem::exists(*state_file_)) {
    std::ifstream in(*state_file_);
    std::stringstream buffer;
    buffer << in.rdbuf();
    json j;
    try {
      j = json::parse(buffer.str());
    } catch (const json::parse_error&) {
      throw SyntaxError(state_file_->string(), 1, 1, "malformed config state file");
    }
    current_ = std::make_shared<const ConfigState>(config_from_json(j));
  }
}

std::shared_ptr<const ConfigState> ConfigStore::snapshot() const {
  std::lock_guard lock(read_mutex_);
  return current_;
}

std::shared_ptr<const ConfigState> ConfigStore::update(const std::function<void(ConfigState&)>& mutate) {
  std::lock_guard writer(write_mutex_);
  auto next = std::make_shared<ConfigState>(*snapshot());
  mutate(*next);
  persist(*next);
  std::shared_ptr<const ConfigState> published = std::move(next);
  {
    std::lock_guard lock(read_mutex_);
    current_ = published;
  }
  return published;
}

void ConfigStore::persist(const ConfigState& state) const {
  if (!state_file_) return;
  auto tmp = *state_file_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("PersistFailed", "cannot write " + tmp.string());
    out << to_json(state).dump(2) << '\n';
    out.flush();
    if (!out) throw Error("PersistFailed", "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, *state_file_);
}

}  // namespace humboldt
