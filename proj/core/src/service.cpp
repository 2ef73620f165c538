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

#include "humboldt/service.hpp"

#include <algorithm>
#include <future>

#include "humboldt/error.hpp"
#include "humboldt/query.hpp"

namespace humboldt {

using nlohmann::json;

namespace {

ViewError view_error(const std::exception_ptr& ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const Error& e) {
    return {e.code(), e.what()};
  } catch (const std::exception& e) {
    return {"InternalError", e.what()};
  }
}

std::set<ProviderKey> key_set(const std::vector<ProviderKey>& keys) { return {keys.begin(), keys.end()}; }

void reject_unknown_keys(const json& change, std::initializer_list<std::string_view> allowed) {
  if (!change.is_object()) throw SchemaError("$", "config change must be an object");
  for (const auto& [k, _] : change.items()) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) throw SchemaError(k, "unknown config key");
  }
}

}  // namespace

DiscoveryService::DiscoveryService(SpecDocument doc, CatalogPtr catalog, ServiceOptions options)
    : doc_(std::move(doc)),
      registry_(register_providers(doc_, std::move(options.registry))),
      home_content_(resolve_custom_content(doc_)),
      config_(std::move(options.state_file)),
      catalog_(catalog ? std::move(catalog) : std::make_shared<const CatalogSnapshot>()) {}

CatalogPtr DiscoveryService::catalog() const {
  std::lock_guard lock(catalog_mutex_);
  return catalog_;
}

void DiscoveryService::replace_catalog(CatalogPtr catalog) {
  std::lock_guard lock(catalog_mutex_);
  catalog_ = std::move(catalog);
}

UserConfig DiscoveryService::user_config(std::string_view user_id) const { return config_.snapshot()->user(user_id); }

std::optional<std::vector<ProviderKey>> DiscoveryService::team_home(std::string_view team) const {
  const auto state = config_.snapshot();
  if (auto it = state->teams.find(std::string(team)); it != state->teams.end()) return it->second.home_providers;
  if (auto it = home_content_.pages.find(std::string(team)); it != home_content_.pages.end()) {
    std::vector<ProviderKey> keys;
    for (const auto& spec : it->second) keys.push_back(spec.key());
    return keys;
  }
  return std::nullopt;
}

bool DiscoveryService::allowed(const ProviderSpec& spec, const UserConfig& user, const ConfigState& state) const {
  const auto key = spec.key();
  return !state.admin.disabled_providers.count(key) && !user.hidden_providers.count(key);
}

std::vector<ProviderSpec> DiscoveryService::providers_for(const UserConfig& user, Surface surface) const {
  const auto state = config_.snapshot();
  std::vector<const ProviderHandle*> handles;
  for (const auto& p : registry_.providers()) {
    if (effective_visibility(p.spec, surface) && allowed(p.spec, user, *state)) handles.push_back(&p);
  }
  std::vector<ProviderSpec> out;
  for (const auto* h : order_for(std::move(handles), user)) out.push_back(h->spec);
  return out;
}

std::vector<const ProviderHandle*> DiscoveryService::order_for(std::vector<const ProviderHandle*> providers,
                                                               const UserConfig& user) const {
  if (!user.provider_order) return providers;
  std::vector<const ProviderHandle*> out;
  for (const auto& key : *user.provider_order) {
    auto it = std::find_if(providers.begin(), providers.end(),
                           [&](const ProviderHandle* p) { return p && p->spec.key() == key; });
    if (it == providers.end()) continue;
    out.push_back(*it);
    *it = nullptr;
  }
  for (const auto* p : providers) {
    if (p) out.push_back(p);
  }
  return out;
}

std::vector<View> DiscoveryService::fetch_views(const std::vector<const ProviderHandle*>& providers,
                                                const DataArtifact* selection,
                                                const CatalogSnapshot& snapshot) const {
  std::vector<std::future<RepresentationPayload>> futures;
  futures.reserve(providers.size());
  for (const auto* p : providers) {
    futures.push_back(std::async(std::launch::async, [this, p, selection, &snapshot] {
      auto bound = bind_inputs(p->spec, selection);
      if (const auto* missing = std::get_if<MissingInput>(&bound)) {
        std::vector<std::string> slots;
        for (auto t : missing->slots) slots.emplace_back(to_string(t));
        throw MissingInputError(p->spec.key().to_string(), std::move(slots));
      }
      return fetch(registry_, *p, std::get<InputBinding>(bound), snapshot);
    }));
  }
  std::vector<View> views;
  views.reserve(providers.size());
  for (std::size_t i = 0; i < providers.size(); ++i) {
    View view{providers[i]->spec, std::nullopt, std::nullopt};
    try {
      view.payload = futures[i].get();
    } catch (...) {
      view.error = view_error(std::current_exception());
    }
    views.push_back(std::move(view));
  }
  return views;
}

std::vector<View> DiscoveryService::overviews(const UserConfig& user) const {
  const auto state = config_.snapshot();
  const auto snapshot = catalog();
  std::vector<const ProviderHandle*> handles;
  std::optional<std::vector<ProviderKey>> home;
  if (user.team) home = team_home(*user.team);
  if (home) {
    for (const auto& key : *home) {
      const auto* p = registry_.find(key);
      if (p && allowed(p->spec, user, *state)) handles.push_back(p);
    }
  } else {
    for (const auto& p : registry_.providers()) {
      if (effective_visibility(p.spec, Surface::Discovery) && inputs_bindable(p.spec, nullptr) &&
          allowed(p.spec, user, *state)) {
        handles.push_back(&p);
      }
    }
  }
  return fetch_views(order_for(std::move(handles), user), nullptr, *snapshot);
}

std::vector<View> DiscoveryService::explore(std::string_view artifact_id, const UserConfig& user) const {
  const auto state = config_.snapshot();
  const auto snapshot = catalog();
  auto it = snapshot->artifacts().find(std::string(artifact_id));
  if (it == snapshot->artifacts().end()) throw UnknownArtifactError(std::string(artifact_id));
  const DataArtifact& selection = it->second;
  std::vector<const ProviderHandle*> handles;
  for (const auto& spec : applicable_providers(registry_, Surface::Exploration, &selection)) {
    const auto* p = registry_.find(spec.key());
    if (p && allowed(p->spec, user, *state)) handles.push_back(p);
  }
  return fetch_views(order_for(std::move(handles), user), &selection, *snapshot);
}

SearchResults DiscoveryService::search(std::string_view query_text, const UserConfig& user) const {
  const auto state = config_.snapshot();
  const auto snapshot = catalog();
  const auto query = query::parse_query(query_text);
  Evaluator evaluator(*snapshot, registry_, [&](const ProviderSpec& spec) { return allowed(spec, user, *state); });
  const auto result = evaluator.evaluate(query, all_ids(*snapshot));

  std::vector<RankInput> inputs;
  inputs.reserve(result.ids.size());
  for (const auto& id : result.ids) {
    RankInput in{id, {}};
    for (const auto& [key, hits] : evaluator.provider_hits()) {
      if (hits.count(id)) in.providers.push_back(key);
    }
    inputs.push_back(std::move(in));
  }
  SearchResults out;
  out.scores = score_all(inputs, *snapshot, doc_, doc_.global_ranking);
  for (const auto& s : out.scores) out.ids.push_back(s.artifact_id);
  return out;
}

View DiscoveryService::filter_view(const ProviderKey& key, std::string_view query_text, const InputBinding& binding,
                                   const UserConfig& user) const {
  const auto state = config_.snapshot();
  const auto snapshot = catalog();
  const auto* provider = registry_.find(key);
  if (!provider || !allowed(provider->spec, user, *state)) throw UnknownProviderError(key.to_string(), {});
  const auto query = query::parse_query(query_text);

  auto payload = fetch(registry_, *provider, binding, *snapshot);
  if (query.empty()) return {provider->spec, std::move(payload), std::nullopt};

  Evaluator evaluator(*snapshot, registry_, [&](const ProviderSpec& spec) { return allowed(spec, user, *state); });
  const auto matched = evaluator.evaluate(query, payload.ids());
  return {provider->spec, prune_payload(payload, matched.ids), std::nullopt};
}

std::vector<Suggestion> DiscoveryService::suggest(std::string_view partial, std::size_t cursor,
                                                  const UserConfig& user) const {
  const auto state = config_.snapshot();
  std::set<ProviderKey> hidden = user.hidden_providers;
  hidden.insert(state->admin.disabled_providers.begin(), state->admin.disabled_providers.end());
  return humboldt::suggest(partial, cursor, doc_, *catalog(), hidden);
}

ProviderKey DiscoveryService::resolve_reference(const json& ref, const std::string& path) const {
  if (ref.is_string()) {
    const auto name = ref.get<std::string>();
    std::vector<ProviderKey> matches;
    for (const auto& p : registry_.providers()) {
      if (p.spec.name == name) matches.push_back(p.spec.key());
    }
    if (matches.size() != 1) throw UnknownProviderReferenceError(name);
    return matches.front();
  }
  if (ref.is_object() && ref.contains("type") && ref.contains("name") && ref["type"].is_string() &&
      ref["name"].is_string()) {
    ProviderKey key{ref["type"].get<std::string>(), ref["name"].get<std::string>()};
    if (!registry_.find(key)) throw UnknownProviderReferenceError(key.to_string());
    return key;
  }
  throw SchemaError(path, "provider reference must be a name or {\"type\", \"name\"}");
}

std::vector<ProviderKey> DiscoveryService::resolve_references(const json& refs, const std::string& path) const {
  if (!refs.is_array()) throw SchemaError(path, "expected array of provider references");
  std::vector<ProviderKey> out;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    out.push_back(resolve_reference(refs[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json DiscoveryService::get_config(const Caller& caller, const ConfigTarget& target) const {
  const auto state = config_.snapshot();
  switch (target.scope) {
    case ConfigScope::Admin:
      return to_json(state->admin);
    case ConfigScope::Team: {
      TeamConfig team{target.name, team_home(target.name).value_or(std::vector<ProviderKey>{})};
      return to_json(team);
    }
    case ConfigScope::User:
      if (caller.role != Role::Admin && caller.user_id != target.name) {
        throw UnauthorizedScopeError(std::string(to_string(caller.role)), "another user's");
      }
      return to_json(state->user(target.name));
  }
  return json::object();
}

json DiscoveryService::update_config(const Caller& caller, const ConfigTarget& target, const json& change) {
  const auto role = std::string(to_string(caller.role));
  switch (target.scope) {
    case ConfigScope::Admin: {
      if (caller.role != Role::Admin) throw UnauthorizedScopeError(role, "admin");
      reject_unknown_keys(change, {"disabled_providers"});
      std::optional<std::set<ProviderKey>> disabled;
      if (change.contains("disabled_providers")) {
        disabled = key_set(resolve_references(change["disabled_providers"], "disabled_providers"));
      }
      auto state = config_.update([&](ConfigState& s) {
        if (disabled) s.admin.disabled_providers = *disabled;
      });
      return to_json(state->admin);
    }
    case ConfigScope::Team: {
      const bool team_admin =
          caller.role == Role::TeamAdmin && (!caller.team || *caller.team == target.name);
      if (caller.role != Role::Admin && !team_admin) throw UnauthorizedScopeError(role, "team");
      reject_unknown_keys(change, {"home_providers"});
      std::optional<std::vector<ProviderKey>> home;
      if (change.contains("home_providers")) home = resolve_references(change["home_providers"], "home_providers");
      auto state = config_.update([&](ConfigState& s) {
        auto& team = s.teams[target.name];
        team.team = target.name;
        if (home) {
          team.home_providers = *home;
        } else if (auto it = home_content_.pages.find(target.name); it != home_content_.pages.end()) {
          team.home_providers.clear();
          for (const auto& spec : it->second) team.home_providers.push_back(spec.key());
        }
      });
      return to_json(state->teams.at(target.name));
    }
    case ConfigScope::User: {
      if (caller.role != Role::Admin && caller.user_id != target.name) {
        throw UnauthorizedScopeError(role, "another user's");
      }
      reject_unknown_keys(change, {"team", "hidden_providers", "provider_order"});
      std::optional<std::optional<std::string>> team;
      if (auto it = change.find("team"); it != change.end()) {
        if (it->is_null()) {
          team = std::optional<std::string>{};
        } else if (it->is_string()) {
          team = it->get<std::string>();
        } else {
          throw SchemaError("team", "expected string or null");
        }
      }
      std::optional<std::set<ProviderKey>> hidden;
      if (change.contains("hidden_providers")) {
        hidden = key_set(resolve_references(change["hidden_providers"], "hidden_providers"));
      }
      std::optional<std::optional<std::vector<ProviderKey>>> order;
      if (auto it = change.find("provider_order"); it != change.end()) {
        if (it->is_null()) {
          order = std::optional<std::vector<ProviderKey>>{};
        } else {
          order = resolve_references(*it, "provider_order");
        }
      }
      auto state = config_.update([&](ConfigState& s) {
        auto& user = s.users[target.name];
        user.user_id = target.name;
        if (team) user.team = *team;
        if (hidden) user.hidden_providers = *hidden;
        if (order) user.provider_order = *order;
      });
      return to_json(state->users.at(target.name));
    }
  }
  return json::object();
}

json to_json(const View& view) {
  json j{{"provider", json::parse(to_json(view.spec).dump())}};
  if (view.payload) j["payload"] = to_json(*view.payload);
  if (view.error) j["error"] = json{{"code", view.error->code}, {"message", view.error->message}};
  return j;
}

}  // namespace humboldt
