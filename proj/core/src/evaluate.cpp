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

#include "humboldt/evaluate.hpp"

#include <algorithm>
#include <charconv>
#include <future>
#include <iterator>

#include "humboldt/error.hpp"
#include "humboldt/text.hpp"

namespace humboldt {

using namespace query;

FieldRef resolve_field(std::string_view name) {
  const auto lower = text::to_lower(name);
  if (lower == "type" || lower == "kind") return {FieldRef::Target::Kind, {}};
  if (lower == "name") return {FieldRef::Target::Name, {}};
  if (lower == "owned_by") return {FieldRef::Target::Metadata, std::string(field_names::kOwner)};
  if (lower == "badged_by") return {FieldRef::Target::Metadata, std::string(field_names::kBadge)};
  return {FieldRef::Target::Metadata, std::string(name)};
}

bool field_matches(const DataArtifact& artifact, const FieldRef& field, std::string_view value) {
  switch (field.target) {
    case FieldRef::Target::Kind:
      return text::iequals(artifact.kind, value);
    case FieldRef::Target::Name:
      return text::iequals(artifact.name, value);
    case FieldRef::Target::Metadata:
      break;
  }
  const auto* v = artifact.field(field.metadata_field);
  if (!v) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return text::iequals(x, value);
        } else if constexpr (std::is_same_v<T, TextList>) {
          return std::any_of(x.begin(), x.end(), [&](const std::string& s) { return text::iequals(s, value); });
        } else if constexpr (std::is_same_v<T, bool>) {
          return text::iequals(value, x ? "true" : "false");
        } else if constexpr (std::is_same_v<T, double>) {
          double parsed = 0.0;
          auto trimmed = text::trim(value);
          auto res = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), parsed);
          return res.ec == std::errc() && res.ptr == trimmed.data() + trimmed.size() && parsed == x;
        } else {
          return text::trim(value) == std::to_string(x.seconds);
        }
      },
      *v);
}

IdSet all_ids(const CatalogSnapshot& snapshot) {
  IdSet out;
  for (const auto& [id, _] : snapshot.artifacts()) out.insert(out.end(), id);
  return out;
}

Evaluator::Evaluator(const CatalogSnapshot& snapshot, const ProviderRegistry& registry, ProviderFilter filter)
    : snapshot_(snapshot), registry_(registry), filter_(std::move(filter)) {}

const ProviderHandle& Evaluator::resolve(const ProviderCall& call) const {
  std::vector<const ProviderHandle*> usable;
  for (const auto* p : registry_.find_by_alias(call.name)) {
    if (!effective_visibility(p->spec, Surface::Search)) continue;
    if (filter_ && !filter_(p->spec)) continue;
    usable.push_back(p);
  }
  if (usable.empty()) throw UnknownProviderError(call.name, {});
  if (usable.size() > 1) {
    std::vector<std::string> names;
    for (const auto* p : usable) names.push_back(p->spec.key().to_string());
    throw UnknownProviderError(call.name, std::move(names));
  }
  return *usable.front();
}

Evaluator::CallTarget Evaluator::target_for(const ProviderCall& call) const {
  const auto& provider = resolve(call);
  auto bound = bind_inputs(provider.spec, nullptr, call.args);
  if (auto* missing = std::get_if<MissingInput>(&bound)) {
    std::vector<std::string> slots;
    for (auto t : missing->slots) slots.emplace_back(to_string(t));
    throw MissingInputError(provider.spec.key().to_string(), std::move(slots));
  }
  return {&provider, std::get<InputBinding>(std::move(bound))};
}

void Evaluator::prefetch(const NodePtr& root) {
  std::vector<CallTarget> pending;
  std::function<void(const Node&)> collect = [&](const Node& n) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, ProviderCall>) {
            auto target = target_for(v);
            auto key = std::make_pair(target.provider->spec.key(), target.binding.values);
            if (cache_.count(key)) return;
            for (const auto& p : pending) {
              if (p.provider == target.provider && p.binding == target.binding) return;
            }
            pending.push_back(std::move(target));
          } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
            collect(*v.left);
            collect(*v.right);
          } else if constexpr (std::is_same_v<T, Not> || std::is_same_v<T, Group>) {
            collect(*v.child);
          }
        },
        n.value);
  };
  collect(*root);
  if (pending.empty()) return;

  std::vector<std::future<RepresentationPayload>> futures;
  futures.reserve(pending.size());
  for (const auto& t : pending) {
    futures.push_back(std::async(std::launch::async, [this, &t] {
      return fetch(registry_, *t.provider, t.binding, snapshot_);
    }));
  }
  // Join everything before rethrowing so no task outlives this frame.
  std::exception_ptr first_error;
  for (std::size_t i = 0; i < futures.size(); ++i) {
    try {
      auto payload = futures[i].get();
      auto ids = payload.ids();
      auto key = pending[i].provider->spec.key();
      hits_[key].insert(ids.begin(), ids.end());
      cache_[{key, pending[i].binding.values}] = std::move(ids);
    } catch (...) {
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

const IdSet& Evaluator::call_result(const ProviderCall& call) {
  auto target = target_for(call);
  return cache_.at({target.provider->spec.key(), target.binding.values});
}

IdSet Evaluator::eval(const Node& node, const IdSet& scope) {
  return std::visit(
      [&](const auto& v) -> IdSet {
        using T = std::decay_t<decltype(v)>;
        IdSet out;
        if constexpr (std::is_same_v<T, Keyword>) {
          for (const auto& id : scope) {
            auto it = snapshot_.artifacts().find(id);
            if (it != snapshot_.artifacts().end() && keyword_match(it->second, v.text)) out.insert(out.end(), id);
          }
        } else if constexpr (std::is_same_v<T, FieldPill>) {
          const auto field = resolve_field(v.field);
          for (const auto& id : scope) {
            auto it = snapshot_.artifacts().find(id);
            if (it != snapshot_.artifacts().end() && field_matches(it->second, field, v.value)) {
              out.insert(out.end(), id);
            }
          }
        } else if constexpr (std::is_same_v<T, ProviderCall>) {
          const auto& hits = call_result(v);
          std::set_intersection(hits.begin(), hits.end(), scope.begin(), scope.end(),
                                std::inserter(out, out.end()));
        } else if constexpr (std::is_same_v<T, And>) {
          auto left = eval(*v.left, scope);
          auto right = eval(*v.right, scope);
          std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                                std::inserter(out, out.end()));
        } else if constexpr (std::is_same_v<T, Or>) {
          auto left = eval(*v.left, scope);
          auto right = eval(*v.right, scope);
          std::set_union(left.begin(), left.end(), right.begin(), right.end(), std::inserter(out, out.end()));
        } else if constexpr (std::is_same_v<T, Not>) {
          auto child = eval(*v.child, scope);
          std::set_difference(scope.begin(), scope.end(), child.begin(), child.end(),
                              std::inserter(out, out.end()));
        } else {
          out = eval(*v.child, scope);
        }
        return out;
      },
      node.value);
}

ResultSet Evaluator::evaluate(const Query& query, const IdSet& scope) {
  if (query.empty()) return {scope, scope};
  prefetch(query.root);
  return {eval(*query.root, scope), scope};
}

ResultSet evaluate(const Query& query, const IdSet& scope, const CatalogSnapshot& snapshot,
                   const ProviderRegistry& registry, ProviderFilter filter) {
  return Evaluator(snapshot, registry, std::move(filter)).evaluate(query, scope);
}

}  // namespace humboldt
