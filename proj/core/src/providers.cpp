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

#include "humboldt/providers.hpp"

#include <algorithm>

#include "humboldt/builtins.hpp"
#include "humboldt/error.hpp"
#include "humboldt/text.hpp"

namespace humboldt {

namespace {

InputSlot required(InputType t) { return {t, true}; }

std::optional<std::string> text_from_selection(const ProviderSpec& spec, const DataArtifact& selection) {
  if (spec.type == "badged") {
    if (const auto* v = selection.field(field_names::kBadge)) {
      if (const auto* list = std::get_if<TextList>(v); list && !list->empty()) return list->front();
      if (const auto* s = std::get_if<std::string>(v)) return *s;
    }
  } else if (spec.type == "type") {
    return selection.kind;
  } else if (spec.type == "owned") {
    if (auto owner = selection.owner()) return owner;
  }
  return selection.name;
}

}  // namespace

std::string_view to_string(BuiltinKind kind) {
  switch (kind) {
    case BuiltinKind::RecentDocuments: return "recent_documents";
    case BuiltinKind::OwnedBy: return "owned_by";
    case BuiltinKind::Badged: return "badged";
    case BuiltinKind::TypeIs: return "type_is";
    case BuiltinKind::NameJoinable: return "name_joinable";
    case BuiltinKind::Favorites: return "favorites";
    case BuiltinKind::EmbeddingView: return "embedding_view";
  }
  return "unknown";
}

const std::string* InputBinding::get(InputType t) const {
  auto it = values.find(t);
  return it == values.end() ? nullptr : &it->second;
}

const std::vector<BuiltinEntry>& builtin_table() {
  static const std::vector<BuiltinEntry> table = {
      {{"recent", "Recent Documents"}, BuiltinKind::RecentDocuments, Representation::List, {}, {}},
      {{"recent", "Recents"}, BuiltinKind::RecentDocuments, Representation::List, {}, {}},
      {{"owned", "Owned By"}, BuiltinKind::OwnedBy, Representation::List, {required(InputType::UserId)}, {}},
      {{"badged", "Badged"}, BuiltinKind::Badged, Representation::List, {required(InputType::Text)}, {}},
      {{"badged", "Endorsed"}, BuiltinKind::Badged, Representation::List, {}, {{{InputType::Text, "endorsed"}}}},
      {{"type", "Type"}, BuiltinKind::TypeIs, Representation::List, {required(InputType::Text)}, {}},
      {{"joinable", "Name-Based"}, BuiltinKind::NameJoinable, Representation::Graph,
       {required(InputType::TableId)}, {}},
      {{"favorites", "Favorites"}, BuiltinKind::Favorites, Representation::List, {}, {}},
      {{"embedding", "Embedding"}, BuiltinKind::EmbeddingView, Representation::Embedding, {}, {}},
  };
  return table;
}

const BuiltinEntry* find_builtin(const ProviderKey& key) {
  for (const auto& e : builtin_table()) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

SpecDocument builtin_gallery() {
  SpecDocument doc;
  for (const auto& e : builtin_table()) {
    ProviderSpec spec;
    spec.type = e.key.type;
    spec.name = e.key.name;
    spec.description = "built-in " + std::string(to_string(e.kind));
    spec.representation = e.representation;
    spec.inputs = e.inputs;
    doc.providers.push_back(std::move(spec));
  }
  return doc;
}

const ProviderHandle* ProviderRegistry::find(const ProviderKey& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &providers_[it->second];
}

std::vector<const ProviderHandle*> ProviderRegistry::find_by_alias(std::string_view alias) const {
  const auto wanted = text::provider_alias(alias);
  std::vector<const ProviderHandle*> out;
  for (const auto& p : providers_) {
    if (text::provider_alias(p.spec.name) == wanted) out.push_back(&p);
  }
  return out;
}

ProviderRegistry register_providers(const SpecDocument& doc, RegistryOptions options) {
  ProviderRegistry registry;
  registry.options_ = std::move(options);
  for (const auto& spec : doc.providers) {
    ProviderHandle handle{spec, HttpTarget{}};
    if (spec.endpoint) {
      handle.target = HttpTarget{*spec.endpoint};
    } else {
      const auto* entry = find_builtin(spec.key());
      if (!entry) throw UnknownBuiltinError(spec.type, spec.name);
      handle.target = BuiltinTarget{entry->kind, entry->preset};
    }
    registry.index_.emplace(spec.key(), registry.providers_.size());
    registry.providers_.push_back(std::move(handle));
  }
  return registry;
}

bool inputs_bindable(const ProviderSpec& spec, const DataArtifact* selection) {
  for (const auto& slot : spec.inputs) {
    if (!slot.required) continue;
    switch (slot.input_type) {
      case InputType::TableId:
        if (!selection || !selection->is_table()) return false;
        break;
      case InputType::UserId:
        if (!selection || !selection->owner()) return false;
        break;
      case InputType::Text:
        if (!selection) return false;
        break;
    }
  }
  return true;
}

std::vector<ProviderSpec> applicable_providers(const ProviderRegistry& registry, Surface surface,
                                               const DataArtifact* selection) {
  std::vector<ProviderSpec> out;
  for (const auto& p : registry.providers()) {
    if (effective_visibility(p.spec, surface) && inputs_bindable(p.spec, selection)) out.push_back(p.spec);
  }
  return out;
}

BindResult bind_inputs(const ProviderSpec& spec, const DataArtifact* selection, std::span<const std::string> free_args) {
  InputBinding binding;
  MissingInput missing;
  std::size_t next_arg = 0;
  auto take_arg = [&]() -> std::optional<std::string> {
    if (next_arg < free_args.size()) return free_args[next_arg++];
    return std::nullopt;
  };
  for (const auto& slot : spec.inputs) {
    if (binding.values.count(slot.input_type)) continue;
    std::optional<std::string> value;
    switch (slot.input_type) {
      case InputType::TableId:
        if (selection && selection->is_table()) {
          value = selection->id;
        } else {
          value = take_arg();
        }
        break;
      case InputType::UserId:
        value = take_arg();
        if (!value && selection) value = selection->owner();
        break;
      case InputType::Text:
        value = take_arg();
        if (!value && selection) value = text_from_selection(spec, *selection);
        break;
    }
    if (value) {
      binding.values.emplace(slot.input_type, std::move(*value));
    } else if (slot.required) {
      missing.slots.push_back(slot.input_type);
    }
  }
  if (!missing.slots.empty()) return missing;
  return binding;
}

nlohmann::json request_body(const InputBinding& binding) {
  nlohmann::json input = nlohmann::json::object();
  for (const auto& [type, value] : binding.values) input[std::string(to_string(type))] = value;
  return nlohmann::json{{"input", std::move(input)}};
}

RepresentationPayload fetch(const ProviderRegistry& registry, const ProviderHandle& provider,
                            const InputBinding& binding, const CatalogSnapshot& snapshot) {
  const auto& spec = provider.spec;
  std::vector<std::string> missing;
  for (const auto& slot : spec.inputs) {
    if (slot.required && !binding.get(slot.input_type)) missing.emplace_back(to_string(slot.input_type));
  }
  if (!missing.empty()) throw MissingInputError(spec.key().to_string(), std::move(missing));

  if (const auto* builtin = std::get_if<BuiltinTarget>(&provider.target)) {
    InputBinding effective = builtin->preset;
    for (const auto& [type, value] : binding.values) effective.values.try_emplace(type, value);
    auto payload = eval_builtin(builtin->kind, effective, snapshot);
    // List-shaped built-ins also serve providers declared as TILES.
    if (payload.representation == Representation::List && spec.representation == Representation::Tiles) {
      payload.representation = Representation::Tiles;
    }
    check_payload(payload, spec.representation, snapshot);
    return payload;
  }

  const auto& endpoint = std::get<HttpTarget>(provider.target).endpoint;
  auto* transport = registry.transport();
  if (!transport) throw ProviderUnavailableError(spec.key().to_string(), "no provider transport configured");
  nlohmann::json body;
  try {
    body = transport->post(endpoint, request_body(binding), registry.timeout());
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw ProviderUnavailableError(spec.key().to_string(), e.what());
  }
  return decode_payload(body, spec.representation, snapshot);
}

}  // namespace humboldt
