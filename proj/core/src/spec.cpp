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

#include "humboldt/spec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "humboldt/error.hpp"

namespace humboldt {

namespace {

constexpr std::array<std::pair<Representation, std::string_view>, 6> kRepresentations{{
    {Representation::Tiles, "TILES"},
    {Representation::List, "LIST"},
    {Representation::Hierarchy, "HIERARCHY"},
    {Representation::Graph, "GRAPH"},
    {Representation::Categories, "CATEGORIES"},
    {Representation::Embedding, "EMBEDDING"},
}};

constexpr std::array<std::pair<InputType, std::string_view>, 3> kInputTypes{{
    {InputType::TableId, "TABLEID"},
    {InputType::UserId, "USERID"},
    {InputType::Text, "TEXT"},
}};

constexpr std::array<std::pair<Surface, std::string_view>, 3> kSurfaces{{
    {Surface::Discovery, "discovery"},
    {Surface::Search, "search"},
    {Surface::Exploration, "exploration"},
}};

constexpr std::array<std::string_view, 8> kProviderKeys{
    "type", "name", "description", "representation", "input", "endpoint", "visible", "ranking"};

std::string describe(const OrderedJson& j) {
  switch (j.type()) {
    case OrderedJson::value_t::null: return "null";
    case OrderedJson::value_t::object: return "object";
    case OrderedJson::value_t::array: return "array";
    case OrderedJson::value_t::string: return "string";
    case OrderedJson::value_t::boolean: return "boolean";
    default: return "number";
  }
}

const OrderedJson& require_key(const OrderedJson& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing required key");
  return *it;
}

std::string as_string(const OrderedJson& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected string, got " + describe(j));
  return j.get<std::string>();
}

void require_object(const OrderedJson& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected object, got " + describe(j));
}

void require_array(const OrderedJson& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected array, got " + describe(j));
}

std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

RankingWeights parse_ranking(const OrderedJson& j, const std::string& path) {
  require_array(j, path);
  RankingWeights weights;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = index_path(path, i);
    const auto& e = j[i];
    require_object(e, p);
    for (const auto& [k, _] : e.items()) {
      if (k != "field" && k != "weight") throw SchemaError(join_path(p, k), "unknown key");
    }
    RankingEntry entry;
    entry.field = as_string(require_key(e, "field", p), join_path(p, "field"));
    const auto& w = require_key(e, "weight", p);
    if (!w.is_number()) throw SchemaError(join_path(p, "weight"), "expected number, got " + describe(w));
    entry.weight = w.get<double>();
    weights.entries.push_back(std::move(entry));
  }
  return weights;
}

InputSlot parse_input(const OrderedJson& j, const std::string& path) {
  require_object(j, path);
  for (const auto& [k, _] : j.items()) {
    if (k != "type" && k != "required") throw SchemaError(join_path(path, k), "unknown key");
  }
  InputSlot slot;
  const auto type_path = join_path(path, "type");
  auto type = parse_input_type(as_string(require_key(j, "type", path), type_path));
  if (!type) throw SchemaError(type_path, "unknown input type '" + j["type"].get<std::string>() + "'");
  slot.input_type = *type;
  if (auto it = j.find("required"); it != j.end()) {
    if (!it->is_boolean()) throw SchemaError(join_path(path, "required"), "expected boolean");
    slot.required = it->get<bool>();
  }
  return slot;
}

ProviderSpec parse_provider(const OrderedJson& j, const std::string& path) {
  require_object(j, path);
  for (const auto& [k, _] : j.items()) {
    if (std::find(kProviderKeys.begin(), kProviderKeys.end(), k) == kProviderKeys.end()) {
      throw SchemaError(join_path(path, k), "unknown provider key");
    }
  }
  ProviderSpec spec;
  spec.type = as_string(require_key(j, "type", path), join_path(path, "type"));
  spec.name = as_string(require_key(j, "name", path), join_path(path, "name"));
  if (auto it = j.find("description"); it != j.end()) {
    spec.description = as_string(*it, join_path(path, "description"));
  }
  const auto rep_path = join_path(path, "representation");
  const auto rep_text = as_string(require_key(j, "representation", path), rep_path);
  auto rep = parse_representation(rep_text);
  if (!rep) throw SchemaError(rep_path, "unknown representation '" + rep_text + "'");
  spec.representation = *rep;
  if (auto it = j.find("input"); it != j.end()) {
    const auto p = join_path(path, "input");
    require_array(*it, p);
    for (std::size_t i = 0; i < it->size(); ++i) spec.inputs.push_back(parse_input((*it)[i], index_path(p, i)));
  }
  if (auto it = j.find("endpoint"); it != j.end()) {
    spec.endpoint = as_string(*it, join_path(path, "endpoint"));
  }
  if (auto it = j.find("visible"); it != j.end()) {
    const auto p = join_path(path, "visible");
    require_object(*it, p);
    std::map<std::string, bool> visible;
    for (const auto& [k, v] : it->items()) {
      if (!v.is_boolean()) throw SchemaError(join_path(p, k), "expected boolean, got " + describe(v));
      visible[k] = v.get<bool>();
    }
    spec.visible = std::move(visible);
  }
  if (auto it = j.find("ranking"); it != j.end()) {
    spec.ranking = parse_ranking(*it, join_path(path, "ranking"));
  }
  return spec;
}

std::vector<TeamPage> parse_home_pages(const OrderedJson& content, const std::string& path) {
  require_array(content, path);
  std::vector<TeamPage> pages;
  for (std::size_t i = 0; i < content.size(); ++i) {
    const auto p = index_path(path, i);
    const auto& page = content[i];
    require_object(page, p);
    TeamPage tp;
    tp.name = as_string(require_key(page, "name", p), join_path(p, "name"));
    const auto data_path = join_path(p, "data");
    const auto& data = require_key(page, "data", p);
    require_array(data, data_path);
    for (std::size_t k = 0; k < data.size(); ++k) tp.data.push_back(as_string(data[k], index_path(data_path, k)));
    pages.push_back(std::move(tp));
  }
  return pages;
}

CustomContent parse_custom_section(const OrderedJson& j, const std::string& path) {
  require_object(j, path);
  CustomContent section;
  section.field = as_string(require_key(j, "field", path), join_path(path, "field"));
  auto it = j.find("content");
  OrderedJson content = it == j.end() ? OrderedJson() : *it;
  if (section.is_home()) {
    section.pages = parse_home_pages(content, join_path(path, "content"));
  } else {
    section.content = std::move(content);
  }
  return section;
}

}  // namespace

std::string_view to_string(Representation r) {
  for (const auto& [v, s] : kRepresentations) {
    if (v == r) return s;
  }
  return "LIST";
}

std::optional<Representation> parse_representation(std::string_view s) {
  for (const auto& [v, name] : kRepresentations) {
    if (name == s) return v;
  }
  return std::nullopt;
}

std::string_view to_string(InputType t) {
  for (const auto& [v, s] : kInputTypes) {
    if (v == t) return s;
  }
  return "TEXT";
}

std::optional<InputType> parse_input_type(std::string_view s) {
  for (const auto& [v, name] : kInputTypes) {
    if (name == s) return v;
  }
  return std::nullopt;
}

std::string_view to_string(Surface s) {
  for (const auto& [v, name] : kSurfaces) {
    if (v == s) return name;
  }
  return "discovery";
}

std::optional<Surface> parse_surface(std::string_view s) {
  for (const auto& [v, name] : kSurfaces) {
    if (name == s) return v;
  }
  return std::nullopt;
}

bool ProviderSpec::requires_input(InputType t) const {
  return std::any_of(inputs.begin(), inputs.end(),
                     [t](const InputSlot& s) { return s.required && s.input_type == t; });
}

const ProviderSpec* SpecDocument::find(const ProviderKey& key) const {
  for (const auto& p : providers) {
    if (p.type == key.type && p.name == key.name) return &p;
  }
  return nullptr;
}

SpecDocument parse_spec(std::string_view text) {
  const OrderedJson root = parse_lenient_json(text);
  require_object(root, "$");

  SpecDocument doc;
  const auto& providers = require_key(root, "providers", "$");
  require_array(providers, "providers");
  for (std::size_t i = 0; i < providers.size(); ++i) {
    doc.providers.push_back(parse_provider(providers[i], index_path("providers", i)));
  }
  if (auto it = root.find("ranking"); it != root.end()) {
    doc.global_ranking = parse_ranking(*it, "ranking");
  }
  if (auto it = root.find("custom"); it != root.end()) {
    // A single section written without its enclosing braces reads as an object.
    if (it->is_object()) {
      doc.custom.push_back(parse_custom_section(*it, "custom"));
    } else {
      require_array(*it, "custom");
      for (std::size_t i = 0; i < it->size(); ++i) {
        doc.custom.push_back(parse_custom_section((*it)[i], index_path("custom", i)));
      }
    }
  }
  for (const auto& [k, v] : root.items()) {
    if (k != "providers" && k != "ranking" && k != "custom") doc.extensions[k] = v;
  }
  return doc;
}

OrderedJson to_json(const RankingWeights& weights) {
  OrderedJson arr = OrderedJson::array();
  for (const auto& e : weights.entries) arr.push_back(OrderedJson{{"field", e.field}, {"weight", e.weight}});
  return arr;
}

OrderedJson to_json(const ProviderSpec& spec) {
  OrderedJson j = OrderedJson::object();
  j["type"] = spec.type;
  j["name"] = spec.name;
  j["description"] = spec.description;
  j["representation"] = std::string(to_string(spec.representation));
  OrderedJson inputs = OrderedJson::array();
  for (const auto& slot : spec.inputs) {
    inputs.push_back(OrderedJson{{"type", std::string(to_string(slot.input_type))}, {"required", slot.required}});
  }
  j["input"] = std::move(inputs);
  if (spec.endpoint) j["endpoint"] = *spec.endpoint;
  if (spec.visible) {
    OrderedJson visible = OrderedJson::object();
    for (const auto& [k, v] : *spec.visible) visible[k] = v;
    j["visible"] = std::move(visible);
  }
  if (spec.ranking) j["ranking"] = to_json(*spec.ranking);
  return j;
}

OrderedJson to_json(const SpecDocument& doc) {
  OrderedJson j = OrderedJson::object();
  OrderedJson providers = OrderedJson::array();
  for (const auto& p : doc.providers) providers.push_back(to_json(p));
  j["providers"] = std::move(providers);
  if (doc.global_ranking) j["ranking"] = to_json(*doc.global_ranking);
  if (!doc.custom.empty()) {
    OrderedJson custom = OrderedJson::array();
    for (const auto& section : doc.custom) {
      OrderedJson s = OrderedJson::object();
      s["field"] = section.field;
      if (section.is_home()) {
        OrderedJson pages = OrderedJson::array();
        for (const auto& page : section.pages) pages.push_back(OrderedJson{{"name", page.name}, {"data", page.data}});
        s["content"] = std::move(pages);
      } else if (!section.content.is_null()) {
        s["content"] = section.content;
      }
      custom.push_back(std::move(s));
    }
    j["custom"] = std::move(custom);
  }
  for (const auto& [k, v] : doc.extensions.items()) j[k] = v;
  return j;
}

std::string serialize_spec(const SpecDocument& doc) { return to_json(doc).dump(2) + "\n"; }

std::string_view to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::DuplicateProviderName: return "DuplicateProviderName";
    case Violation::Kind::EmptyEndpoint: return "EmptyEndpoint";
    case Violation::Kind::EmptyProviderType: return "EmptyProviderType";
    case Violation::Kind::EmptyProviderName: return "EmptyProviderName";
    case Violation::Kind::DuplicateRankingField: return "DuplicateRankingField";
    case Violation::Kind::EmptyRankingField: return "EmptyRankingField";
    case Violation::Kind::NonFiniteWeight: return "NonFiniteWeight";
  }
  return "Unknown";
}

namespace {

void validate_ranking(const RankingWeights& weights, const std::string& path, std::vector<Violation>& out) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < weights.entries.size(); ++i) {
    const auto& e = weights.entries[i];
    const auto p = index_path(path, i);
    if (e.field.empty()) {
      out.push_back({Violation::Kind::EmptyRankingField, p + ".field", "ranking field name is empty"});
    } else if (!seen.insert(e.field).second) {
      out.push_back({Violation::Kind::DuplicateRankingField, p + ".field", "duplicate ranking field '" + e.field + "'"});
    }
    if (!std::isfinite(e.weight)) {
      out.push_back({Violation::Kind::NonFiniteWeight, p + ".weight", "weight for '" + e.field + "' is not finite"});
    }
  }
}

}  // namespace

std::vector<Violation> validate_spec(const SpecDocument& doc) {
  std::vector<Violation> out;
  std::set<ProviderKey> seen;
  for (std::size_t i = 0; i < doc.providers.size(); ++i) {
    const auto& p = doc.providers[i];
    const auto path = index_path("providers", i);
    if (p.type.empty()) out.push_back({Violation::Kind::EmptyProviderType, path + ".type", "provider type is empty"});
    if (p.name.empty()) out.push_back({Violation::Kind::EmptyProviderName, path + ".name", "provider name is empty"});
    if (!seen.insert(p.key()).second) {
      out.push_back({Violation::Kind::DuplicateProviderName, path,
                     "duplicate provider (" + p.type + ", " + p.name + ")"});
    }
    if (p.endpoint && p.endpoint->empty()) {
      out.push_back({Violation::Kind::EmptyEndpoint, path + ".endpoint", "endpoint is empty"});
    }
    if (p.ranking) validate_ranking(*p.ranking, path + ".ranking", out);
  }
  if (doc.global_ranking) validate_ranking(*doc.global_ranking, "ranking", out);
  return out;
}

ResolvedContent resolve_custom_content(const SpecDocument& doc) {
  ResolvedContent result;
  for (const auto& section : doc.custom) {
    if (!section.is_home()) continue;
    for (const auto& page : section.pages) {
      auto& resolved = result.pages[page.name];
      resolved.clear();
      for (const auto& ref : page.data) {
        const ProviderSpec* match = nullptr;
        std::size_t count = 0;
        for (const auto& p : doc.providers) {
          if (p.name != ref) continue;
          if (!match) match = &p;
          ++count;
        }
        if (!match) {
          result.warnings.push_back({ContentWarning::Kind::UnresolvedReference, page.name, ref});
          continue;
        }
        if (count > 1) result.warnings.push_back({ContentWarning::Kind::AmbiguousReference, page.name, ref});
        resolved.push_back(*match);
      }
    }
  }
  return result;
}

bool effective_visibility(const ProviderSpec& spec, Surface surface) {
  if (!spec.visible) return true;
  auto it = spec.visible->find(std::string(to_string(surface)));
  return it == spec.visible->end() || it->second;
}

}  // namespace humboldt
