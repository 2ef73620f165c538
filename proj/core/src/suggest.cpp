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

#include "humboldt/suggest.hpp"

#include <algorithm>

#include "humboldt/evaluate.hpp"
#include "humboldt/query.hpp"
#include "humboldt/text.hpp"

namespace humboldt {

namespace {

using query::is_ident_char;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

struct Context {
  enum class Kind { Provider, Value, General };

  Kind kind = Kind::General;
  std::string prefix;
  std::string field;
  std::size_t replace_from = 0;
};

// Start index of an unterminated quote in s, or npos.
std::size_t open_quote(std::string_view s) {
  char q = 0;
  std::size_t start = std::string_view::npos;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (q) {
      if (c == '\\' && i + 1 < s.size()) {
        ++i;
      } else if (c == q) {
        q = 0;
        start = std::string_view::npos;
      }
    } else if (c == '\'' || c == '"') {
      q = c;
      start = i;
    }
  }
  return start;
}

// Identifier ending right before `end` when s[end] is ':' (after optional spaces).
std::optional<std::string> field_before_colon(std::string_view s, std::size_t colon) {
  if (colon == 0) return std::nullopt;
  std::size_t e = colon;
  std::size_t b = e;
  while (b > 0 && is_ident_char(s[b - 1])) --b;
  if (b == e) return std::nullopt;
  return std::string(s.substr(b, e - b));
}

Context classify(std::string_view s) {
  Context ctx;
  if (auto q = open_quote(s); q != std::string_view::npos) {
    ctx.prefix = std::string(s.substr(q + 1));
    ctx.replace_from = q;
    std::size_t k = q;
    while (k > 0 && is_space(s[k - 1])) --k;
    if (k > 0 && s[k - 1] == ':') {
      if (auto f = field_before_colon(s, k - 1)) {
        ctx.kind = Context::Kind::Value;
        ctx.field = *f;
      }
    }
    return ctx;
  }
  std::size_t j = s.size();
  while (j > 0 && is_ident_char(s[j - 1])) --j;
  ctx.prefix = std::string(s.substr(j));
  ctx.replace_from = j;
  if (j > 0 && s[j - 1] == ':') {
    if (auto f = field_before_colon(s, j - 1)) {
      ctx.kind = Context::Kind::Value;
      ctx.field = *f;
    } else {
      ctx.kind = Context::Kind::Provider;
      ctx.replace_from = j - 1;
    }
    return ctx;
  }
  {
    // `field: pre`, with spaces between the colon and the value.
    std::size_t k = j;
    while (k > 0 && is_space(s[k - 1])) --k;
    if (k > 0 && s[k - 1] == ':') {
      if (auto f = field_before_colon(s, k - 1)) {
        ctx.kind = Context::Kind::Value;
        ctx.field = *f;
      }
    }
  }
  return ctx;
}

std::string insertable(const std::string& value) {
  if (query::is_bare_word(value)) return value;
  std::string out = "'";
  for (char c : value) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  return out + "'";
}

std::vector<std::string> distinct_values(const CatalogSnapshot& snapshot, const FieldRef& field) {
  std::set<std::string> values;
  for (const auto& [_, a] : snapshot.artifacts()) {
    switch (field.target) {
      case FieldRef::Target::Kind:
        values.insert(a.kind);
        continue;
      case FieldRef::Target::Name:
        values.insert(a.name);
        continue;
      case FieldRef::Target::Metadata:
        break;
    }
    const auto* v = a.field(field.metadata_field);
    if (!v) continue;
    if (const auto* list = std::get_if<TextList>(v)) {
      values.insert(list->begin(), list->end());
    } else {
      values.insert(display_value(*v));
    }
  }
  return {values.begin(), values.end()};
}

std::vector<std::string> query_fields(const CatalogSnapshot& snapshot) {
  std::set<std::string> metadata;
  for (const auto& [_, a] : snapshot.artifacts()) {
    for (const auto& [k, __] : a.fields) metadata.insert(k);
  }
  std::vector<std::string> out{"type", "name"};
  if (metadata.count(std::string(field_names::kOwner))) out.emplace_back("owned_by");
  if (metadata.count(std::string(field_names::kBadge))) out.emplace_back("badged_by");
  for (const auto& m : metadata) {
    if (query::is_bare_word(m) && std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

}  // namespace

std::string_view to_string(Suggestion::Kind kind) {
  switch (kind) {
    case Suggestion::Kind::Provider: return "provider";
    case Suggestion::Kind::Field: return "field";
    case Suggestion::Kind::Value: return "value";
    case Suggestion::Kind::Hint: return "hint";
  }
  return "hint";
}

std::vector<Suggestion> suggest(std::string_view partial, std::size_t cursor, const SpecDocument& doc,
                                const CatalogSnapshot& snapshot, const std::set<ProviderKey>& hidden) {
  const auto s = partial.substr(0, std::min(cursor, partial.size()));
  const auto ctx = classify(s);
  std::vector<Suggestion> out;

  auto add_providers = [&](bool with_colon_in_text) {
    for (const auto& p : doc.providers) {
      if (!effective_visibility(p, Surface::Search) || hidden.count(p.key())) continue;
      const auto alias = text::provider_alias(p.name);
      if (!text::istarts_with(alias, ctx.prefix)) continue;
      const bool has_inputs = std::any_of(p.inputs.begin(), p.inputs.end(), [](const InputSlot& i) { return i.required; });
      out.push_back({Suggestion::Kind::Provider, with_colon_in_text ? ":" + alias : alias,
                     ":" + alias + (has_inputs ? "(" : "()"), ctx.replace_from});
    }
  };

  switch (ctx.kind) {
    case Context::Kind::Provider:
      add_providers(false);
      break;
    case Context::Kind::Value: {
      for (const auto& v : distinct_values(snapshot, resolve_field(ctx.field))) {
        if (!text::istarts_with(v, ctx.prefix)) continue;
        out.push_back({Suggestion::Kind::Value, v, insertable(v), ctx.replace_from});
        if (out.size() == kMaxValueSuggestions) break;
      }
      break;
    }
    case Context::Kind::General: {
      for (const auto& f : query_fields(snapshot)) {
        if (text::istarts_with(f, ctx.prefix)) out.push_back({Suggestion::Kind::Field, f, f + ": ", ctx.replace_from});
      }
      add_providers(true);
      const auto hint = ctx.prefix.empty() ? std::string("free text keyword") : "search for \"" + ctx.prefix + "\"";
      out.push_back({Suggestion::Kind::Hint, hint, ctx.prefix, ctx.replace_from});
      break;
    }
  }
  return out;
}

}  // namespace humboldt
