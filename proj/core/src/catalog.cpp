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

#include "humboldt/catalog.hpp"

#include <cmath>

#include "humboldt/error.hpp"
#include "humboldt/text.hpp"

namespace humboldt {

using nlohmann::json;

namespace {

std::string at(const std::string& base, const std::string& key) { return base + "." + key; }

std::string string_key(const json& obj, const char* key, const std::string& path, bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw SchemaError(at(path, key), "missing required key");
    return {};
  }
  if (!it->is_string()) throw SchemaError(at(path, key), "expected string");
  return it->get<std::string>();
}

double finite_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "number is not finite");
  return v;
}

MetadataValue parse_value(const json& j, const std::string& path) {
  switch (j.type()) {
    case json::value_t::string:
      return j.get<std::string>();
    case json::value_t::boolean:
      return j.get<bool>();
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
    case json::value_t::number_float:
      return finite_number(j, path);
    case json::value_t::array: {
      TextList list;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) throw SchemaError(path + "[" + std::to_string(i) + "]", "expected string");
        list.push_back(j[i].get<std::string>());
      }
      return list;
    }
    case json::value_t::object: {
      auto it = j.find("ts");
      if (j.size() != 1 || it == j.end()) throw SchemaError(path, "object values must be {\"ts\": <seconds>}");
      if (!it->is_number_integer()) throw SchemaError(path + ".ts", "expected integer seconds");
      auto secs = it->get<std::int64_t>();
      if (secs < 0) throw SchemaError(path + ".ts", "timestamp must be non-negative");
      return Timestamp{secs};
    }
    default:
      throw SchemaError(path, "unsupported metadata value");
  }
}

DataArtifact parse_artifact(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected object");
  DataArtifact a;
  a.id = string_key(j, "id", path, true);
  a.kind = string_key(j, "kind", path, true);
  if (a.kind.empty()) throw SchemaError(at(path, "kind"), "kind must not be empty");
  a.name = string_key(j, "name", path, false);
  if (auto it = j.find("fields"); it != j.end()) {
    if (!it->is_object()) throw SchemaError(at(path, "fields"), "expected object");
    for (const auto& [k, v] : it->items()) a.fields.emplace(k, parse_value(v, at(path, "fields." + k)));
  }
  if (auto it = j.find("columns"); it != j.end()) {
    if (!it->is_array()) throw SchemaError(at(path, "columns"), "expected array");
    std::vector<std::string> columns;
    for (const auto& c : *it) {
      if (!c.is_string()) throw SchemaError(at(path, "columns"), "column names must be strings");
      columns.push_back(c.get<std::string>());
    }
    a.columns = std::move(columns);
  }
  if (auto it = j.find("position"); it != j.end()) {
    const auto p = at(path, "position");
    if (!it->is_object()) throw SchemaError(p, "expected object");
    auto x = it->find("x");
    auto y = it->find("y");
    if (x == it->end() || y == it->end()) throw SchemaError(p, "position needs x and y");
    a.position = Position{finite_number(*x, p + ".x"), finite_number(*y, p + ".y")};
  }
  return a;
}

}  // namespace

const MetadataValue* DataArtifact::field(std::string_view name) const {
  auto it = fields.find(std::string(name));
  return it == fields.end() ? nullptr : &it->second;
}

std::optional<std::string> DataArtifact::owner() const {
  if (const auto* v = field("owner")) {
    if (const auto* s = std::get_if<std::string>(v)) return *s;
  }
  return std::nullopt;
}

CatalogSnapshot::CatalogSnapshot(std::vector<DataArtifact> artifacts, std::uint64_t version) : version_(version) {
  for (auto& a : artifacts) {
    auto id = a.id;
    if (!artifacts_.emplace(id, std::move(a)).second) throw DuplicateIdError(id);
  }
}

bool CatalogSnapshot::contains(std::string_view id) const { return artifacts_.count(std::string(id)) > 0; }

CatalogSnapshot load_catalog(std::string_view source, std::uint64_t version) {
  json root;
  try {
    root = json::parse(source.begin(), source.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < source.size(); ++i) {
      if (source[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SyntaxError("", line, column, "malformed catalog JSON");
  }
  if (!root.is_array()) throw SchemaError("$", "catalog must be an array of artifacts");
  std::vector<DataArtifact> artifacts;
  artifacts.reserve(root.size());
  for (std::size_t i = 0; i < root.size(); ++i) {
    artifacts.push_back(parse_artifact(root[i], "[" + std::to_string(i) + "]"));
  }
  return CatalogSnapshot(std::move(artifacts), version);
}

json to_json(const MetadataValue& value) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Timestamp>) {
          return json{{"ts", v.seconds}};
        } else {
          return json(v);
        }
      },
      value);
}

json to_json(const DataArtifact& a) {
  json j = json::object();
  j["id"] = a.id;
  j["kind"] = a.kind;
  j["name"] = a.name;
  json fields = json::object();
  for (const auto& [k, v] : a.fields) fields[k] = to_json(v);
  j["fields"] = std::move(fields);
  if (a.columns) j["columns"] = *a.columns;
  if (a.position) j["position"] = json{{"x", a.position->x}, {"y", a.position->y}};
  return j;
}

std::string serialize_catalog(const CatalogSnapshot& snapshot) {
  json arr = json::array();
  for (const auto& [_, a] : snapshot.artifacts()) arr.push_back(to_json(a));
  return arr.dump(2) + "\n";
}

std::optional<DataArtifact> get_artifact(const CatalogSnapshot& snapshot, std::string_view id) {
  auto it = snapshot.artifacts().find(std::string(id));
  if (it == snapshot.artifacts().end()) return std::nullopt;
  return it->second;
}

bool keyword_match(const DataArtifact& artifact, std::string_view keyword) {
  const auto needle = text::trim(keyword);
  if (text::icontains(artifact.name, needle) || text::icontains(artifact.kind, needle)) return true;
  for (const auto& [_, value] : artifact.fields) {
    if (const auto* s = std::get_if<std::string>(&value)) {
      if (text::icontains(*s, needle)) return true;
    } else if (const auto* list = std::get_if<TextList>(&value)) {
      for (const auto& item : *list) {
        if (text::icontains(item, needle)) return true;
      }
    }
  }
  return false;
}

std::string display_value(const MetadataValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return json(v).dump();
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, TextList>) {
          std::string out;
          for (const auto& s : v) {
            if (!out.empty()) out += ", ";
            out += s;
          }
          return out;
        } else {
          return std::to_string(v.seconds);
        }
      },
      value);
}

}  // namespace humboldt
