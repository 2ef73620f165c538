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

#include "humboldt/builtins.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "humboldt/error.hpp"
#include "humboldt/text.hpp"

namespace humboldt {

namespace {

const std::string& require(const InputBinding& binding, InputType t, BuiltinKind kind) {
  if (const auto* v = binding.get(t)) return *v;
  throw MissingInputError(std::string(to_string(kind)), {std::string(to_string(t))});
}

RepresentationPayload list_of(const CatalogSnapshot& snapshot, auto&& predicate) {
  RepresentationPayload p;
  p.representation = Representation::List;
  for (const auto& [id, a] : snapshot.artifacts()) {
    if (predicate(a)) p.items.push_back({id, {}});
  }
  return p;
}

bool has_badge(const DataArtifact& a, std::string_view badge) {
  const auto* v = a.field(field_names::kBadge);
  if (!v) return false;
  if (const auto* list = std::get_if<TextList>(v)) {
    return std::any_of(list->begin(), list->end(), [&](const std::string& b) { return text::iequals(b, badge); });
  }
  if (const auto* s = std::get_if<std::string>(v)) return text::iequals(*s, badge);
  return false;
}

std::set<std::string> column_set(const DataArtifact& a) {
  std::set<std::string> out;
  if (a.columns) {
    for (const auto& c : *a.columns) out.insert(text::to_lower(c));
  }
  return out;
}

std::string shared_columns(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::string label;
  for (const auto& c : a) {
    if (!b.count(c)) continue;
    if (!label.empty()) label += ",";
    label += c;
  }
  return label;
}

RepresentationPayload name_joinable(const std::string& table_id, const CatalogSnapshot& snapshot) {
  RepresentationPayload p;
  p.representation = Representation::Graph;
  auto start = snapshot.artifacts().find(table_id);
  if (start == snapshot.artifacts().end() || !start->second.is_table()) return p;

  std::vector<std::pair<std::string, std::set<std::string>>> tables;
  for (const auto& [id, a] : snapshot.artifacts()) {
    if (a.is_table()) tables.emplace_back(id, column_set(a));
  }
  auto shares = [&](std::size_t i, std::size_t j) { return !shared_columns(tables[i].second, tables[j].second).empty(); };

  // Breadth-first over the share-a-column relation; discovery order fixes
  // both node order and edge orientation.
  std::vector<std::size_t> order;
  std::vector<bool> seen(tables.size(), false);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (tables[i].first == table_id) {
      seen[i] = true;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    order.push_back(cur);
    for (std::size_t j = 0; j < tables.size(); ++j) {
      if (!seen[j] && shares(cur, j)) {
        seen[j] = true;
        queue.push_back(j);
      }
    }
  }
  for (auto idx : order) p.items.push_back({tables[idx].first, {}});
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      auto label = shared_columns(tables[order[a]].second, tables[order[b]].second);
      if (!label.empty()) p.edges.push_back({tables[order[a]].first, tables[order[b]].first, label});
    }
  }
  return p;
}

}  // namespace

RepresentationPayload eval_builtin(BuiltinKind kind, const InputBinding& binding, const CatalogSnapshot& snapshot) {
  switch (kind) {
    case BuiltinKind::RecentDocuments: {
      std::vector<std::pair<std::int64_t, std::string>> dated;
      for (const auto& [id, a] : snapshot.artifacts()) {
        const auto* v = a.field(field_names::kCreatedAt);
        if (const auto* ts = v ? std::get_if<Timestamp>(v) : nullptr) dated.emplace_back(ts->seconds, id);
      }
      std::sort(dated.begin(), dated.end(), [](const auto& l, const auto& r) {
        return l.first != r.first ? l.first > r.first : l.second < r.second;
      });
      RepresentationPayload p;
      p.representation = Representation::List;
      for (auto& [_, id] : dated) p.items.push_back({std::move(id), {}});
      return p;
    }
    case BuiltinKind::OwnedBy: {
      const auto& user = require(binding, InputType::UserId, kind);
      return list_of(snapshot, [&](const DataArtifact& a) {
        auto owner = a.owner();
        return owner && text::iequals(*owner, user);
      });
    }
    case BuiltinKind::Badged: {
      const auto& badge = require(binding, InputType::Text, kind);
      return list_of(snapshot, [&](const DataArtifact& a) { return has_badge(a, badge); });
    }
    case BuiltinKind::TypeIs: {
      const auto& k = require(binding, InputType::Text, kind);
      return list_of(snapshot, [&](const DataArtifact& a) { return text::iequals(a.kind, k); });
    }
    case BuiltinKind::NameJoinable:
      return name_joinable(require(binding, InputType::TableId, kind), snapshot);
    case BuiltinKind::Favorites:
      return list_of(snapshot, [](const DataArtifact& a) {
        const auto* v = a.field(field_names::kFavorite);
        const auto* b = v ? std::get_if<bool>(v) : nullptr;
        return b && *b;
      });
    case BuiltinKind::EmbeddingView: {
      RepresentationPayload p;
      p.representation = Representation::Embedding;
      for (const auto& [id, a] : snapshot.artifacts()) {
        if (!a.position) continue;
        p.items.push_back({id, {}});
        p.positions[id] = *a.position;
      }
      return p;
    }
  }
  return {};
}

}  // namespace humboldt
