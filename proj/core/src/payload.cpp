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

#include "humboldt/payload.hpp"

#include <cmath>
#include <deque>
#include <functional>

#include "humboldt/error.hpp"

namespace humboldt {

using nlohmann::json;

namespace {

const char* member_for(Representation r) {
  switch (r) {
    case Representation::Graph: return "edges";
    case Representation::Hierarchy: return "children";
    case Representation::Categories: return "categories";
    case Representation::Embedding: return "positions";
    default: return nullptr;
  }
}

std::string require_id(const json& j, const std::string& where) {
  if (!j.is_string()) throw MalformedPayloadError(where + ": expected artifact id string");
  return j.get<std::string>();
}

std::vector<std::string> id_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw MalformedPayloadError(where + ": expected array of ids");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(require_id(e, where));
  return out;
}

std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void check_acyclic(const std::map<std::string, std::vector<std::string>>& children) {
  enum class Mark { Unvisited, Active, Done };
  std::map<std::string, Mark> marks;
  std::function<void(const std::string&)> visit = [&](const std::string& node) {
    auto& m = marks[node];
    if (m == Mark::Done) return;
    if (m == Mark::Active) throw MalformedPayloadError("hierarchy contains a cycle through '" + node + "'");
    m = Mark::Active;
    if (auto it = children.find(node); it != children.end()) {
      for (const auto& c : it->second) visit(c);
    }
    marks[node] = Mark::Done;
  };
  for (const auto& [parent, _] : children) visit(parent);
}

// Appends every id referenced by the structure members to items.
void absorb_references(RepresentationPayload& p) {
  IdSet seen;
  for (const auto& item : p.items) seen.insert(item.id);
  auto add = [&](const std::string& id) {
    if (seen.insert(id).second) p.items.push_back({id, {}});
  };
  for (const auto& e : p.edges) {
    add(e.from);
    add(e.to);
  }
  for (const auto& [parent, kids] : p.children) {
    add(parent);
    for (const auto& k : kids) add(k);
  }
  for (const auto& [_, members] : p.categories) {
    for (const auto& m : members) add(m);
  }
  for (const auto& [id, _] : p.positions) add(id);
}

}  // namespace

IdSet RepresentationPayload::ids() const {
  IdSet out;
  for (const auto& item : items) out.insert(item.id);
  return out;
}

std::vector<std::string> RepresentationPayload::ordered_ids() const {
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item.id);
  return out;
}

void check_payload(const RepresentationPayload& p, Representation declared, const CatalogSnapshot& snapshot) {
  if (p.representation != declared) {
    throw RepresentationMismatchError(std::string(to_string(declared)), std::string(to_string(p.representation)));
  }
  if (!p.edges.empty() && p.representation != Representation::Graph) {
    throw MalformedPayloadError("edges are only allowed in GRAPH payloads");
  }
  if (!p.children.empty() && p.representation != Representation::Hierarchy) {
    throw MalformedPayloadError("children are only allowed in HIERARCHY payloads");
  }
  if (!p.categories.empty() && p.representation != Representation::Categories) {
    throw MalformedPayloadError("categories are only allowed in CATEGORIES payloads");
  }
  if (!p.positions.empty() && p.representation != Representation::Embedding) {
    throw MalformedPayloadError("positions are only allowed in EMBEDDING payloads");
  }
  IdSet items;
  for (const auto& item : p.items) {
    if (!items.insert(item.id).second) throw MalformedPayloadError("duplicate item '" + item.id + "'");
  }
  auto check_ref = [&](const std::string& id) {
    if (!snapshot.contains(id)) throw DanglingArtifactError(id);
    if (!items.count(id)) throw MalformedPayloadError("'" + id + "' is referenced but not listed in items");
  };
  for (const auto& id : items) {
    if (!snapshot.contains(id)) throw DanglingArtifactError(id);
  }
  for (const auto& e : p.edges) {
    check_ref(e.from);
    check_ref(e.to);
  }
  for (const auto& [parent, kids] : p.children) {
    check_ref(parent);
    for (const auto& k : kids) check_ref(k);
  }
  for (const auto& [_, members] : p.categories) {
    for (const auto& m : members) check_ref(m);
  }
  for (const auto& [id, pos] : p.positions) {
    check_ref(id);
    if (!std::isfinite(pos.x) || !std::isfinite(pos.y)) {
      throw MalformedPayloadError("position of '" + id + "' is not finite");
    }
  }
  if (p.representation == Representation::Hierarchy) check_acyclic(p.children);
}

RepresentationPayload decode_payload(const json& body, Representation declared, const CatalogSnapshot& snapshot) {
  if (!body.is_object()) throw MalformedPayloadError("payload must be a JSON object");
  auto rep_it = body.find("representation");
  if (rep_it == body.end() || !rep_it->is_string()) {
    throw MalformedPayloadError("payload lacks a representation string");
  }
  const auto rep_text = rep_it->get<std::string>();
  auto rep = parse_representation(rep_text);
  if (!rep) throw MalformedPayloadError("unknown representation '" + rep_text + "'");
  if (*rep != declared) throw RepresentationMismatchError(std::string(to_string(declared)), rep_text);

  const char* allowed = member_for(*rep);
  for (const auto& [key, _] : body.items()) {
    if (key == "representation" || key == "items") continue;
    if (key == "edges" || key == "children" || key == "categories" || key == "positions") {
      if (!allowed || key != allowed) {
        throw MalformedPayloadError("'" + key + "' is not allowed in a " + rep_text + " payload");
      }
      continue;
    }
    throw MalformedPayloadError("unknown payload key '" + key + "'");
  }

  RepresentationPayload p;
  p.representation = *rep;
  if (auto it = body.find("items"); it != body.end()) {
    if (!it->is_array()) throw MalformedPayloadError("items must be an array");
    for (const auto& entry : *it) {
      PayloadItem item;
      if (entry.is_string()) {
        item.id = entry.get<std::string>();
      } else if (entry.is_object()) {
        auto id = entry.find("id");
        if (id == entry.end()) throw MalformedPayloadError("item object lacks an id");
        item.id = require_id(*id, "items");
        if (auto ann = entry.find("annotations"); ann != entry.end()) {
          if (!ann->is_object()) throw MalformedPayloadError("annotations must be an object");
          for (const auto& [k, v] : ann->items()) item.annotations[k] = scalar_text(v);
        }
      } else {
        throw MalformedPayloadError("items must be ids or {\"id\": ...} objects");
      }
      p.items.push_back(std::move(item));
    }
  }
  if (auto it = body.find("edges"); it != body.end()) {
    if (!it->is_array()) throw MalformedPayloadError("edges must be an array");
    for (const auto& e : *it) {
      if (!e.is_object() || !e.contains("from") || !e.contains("to")) {
        throw MalformedPayloadError("edges need from and to");
      }
      Edge edge{require_id(e["from"], "edges.from"), require_id(e["to"], "edges.to"), {}};
      if (auto label = e.find("label"); label != e.end()) edge.label = scalar_text(*label);
      p.edges.push_back(std::move(edge));
    }
  }
  if (auto it = body.find("children"); it != body.end()) {
    if (!it->is_object()) throw MalformedPayloadError("children must be an object");
    for (const auto& [parent, kids] : it->items()) p.children[parent] = id_list(kids, "children." + parent);
  }
  if (auto it = body.find("categories"); it != body.end()) {
    if (!it->is_object()) throw MalformedPayloadError("categories must be an object");
    for (const auto& [name, members] : it->items()) p.categories[name] = id_list(members, "categories." + name);
  }
  if (auto it = body.find("positions"); it != body.end()) {
    if (!it->is_object()) throw MalformedPayloadError("positions must be an object");
    for (const auto& [id, pos] : it->items()) {
      if (!pos.is_object() || !pos.contains("x") || !pos.contains("y") || !pos["x"].is_number() ||
          !pos["y"].is_number()) {
        throw MalformedPayloadError("position of '" + id + "' needs numeric x and y");
      }
      p.positions[id] = Position{pos["x"].get<double>(), pos["y"].get<double>()};
    }
  }
  absorb_references(p);
  check_payload(p, declared, snapshot);
  return p;
}

json to_json(const RepresentationPayload& p) {
  json j = json::object();
  j["representation"] = std::string(to_string(p.representation));
  json items = json::array();
  for (const auto& item : p.items) {
    json entry{{"id", item.id}};
    if (!item.annotations.empty()) entry["annotations"] = item.annotations;
    items.push_back(std::move(entry));
  }
  j["items"] = std::move(items);
  switch (p.representation) {
    case Representation::Graph: {
      json edges = json::array();
      for (const auto& e : p.edges) edges.push_back(json{{"from", e.from}, {"to", e.to}, {"label", e.label}});
      j["edges"] = std::move(edges);
      break;
    }
    case Representation::Hierarchy:
      j["children"] = p.children;
      break;
    case Representation::Categories:
      j["categories"] = p.categories;
      break;
    case Representation::Embedding: {
      json positions = json::object();
      for (const auto& [id, pos] : p.positions) positions[id] = json{{"x", pos.x}, {"y", pos.y}};
      j["positions"] = std::move(positions);
      break;
    }
    default:
      break;
  }
  return j;
}

RepresentationPayload prune_payload(const RepresentationPayload& payload, const IdSet& keep) {
  IdSet survivors;
  if (payload.representation == Representation::Hierarchy) {
    IdSet has_parent;
    for (const auto& [_, kids] : payload.children) has_parent.insert(kids.begin(), kids.end());
    std::deque<std::string> queue;
    for (const auto& item : payload.items) {
      if (!has_parent.count(item.id) && keep.count(item.id) && survivors.insert(item.id).second) {
        queue.push_back(item.id);
      }
    }
    while (!queue.empty()) {
      auto node = std::move(queue.front());
      queue.pop_front();
      auto it = payload.children.find(node);
      if (it == payload.children.end()) continue;
      for (const auto& child : it->second) {
        if (keep.count(child) && survivors.insert(child).second) queue.push_back(child);
      }
    }
  } else {
    for (const auto& item : payload.items) {
      if (keep.count(item.id)) survivors.insert(item.id);
    }
  }

  RepresentationPayload out;
  out.representation = payload.representation;
  for (const auto& item : payload.items) {
    if (survivors.count(item.id)) out.items.push_back(item);
  }
  for (const auto& e : payload.edges) {
    if (survivors.count(e.from) && survivors.count(e.to)) out.edges.push_back(e);
  }
  for (const auto& [parent, kids] : payload.children) {
    if (!survivors.count(parent)) continue;
    std::vector<std::string> kept;
    for (const auto& k : kids) {
      if (survivors.count(k)) kept.push_back(k);
    }
    if (!kept.empty() || kids.empty()) out.children[parent] = std::move(kept);
  }
  for (const auto& [name, members] : payload.categories) {
    std::vector<std::string> kept;
    for (const auto& m : members) {
      if (survivors.count(m)) kept.push_back(m);
    }
    if (!kept.empty() || members.empty()) out.categories[name] = std::move(kept);
  }
  for (const auto& [id, pos] : payload.positions) {
    if (survivors.count(id)) out.positions[id] = pos;
  }
  return out;
}

}  // namespace humboldt
