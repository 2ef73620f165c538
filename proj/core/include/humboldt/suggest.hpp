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

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "humboldt/catalog.hpp"
#include "humboldt/spec.hpp"

namespace humboldt {

struct Suggestion {
  enum class Kind { Provider, Field, Value, Hint };

  Kind kind;
  std::string text;         // what the dropdown shows
  std::string insert;       // replacement for partial[replace_from, cursor)
  std::size_t replace_from = 0;

  bool operator==(const Suggestion&) const = default;
};

std::string_view to_string(Suggestion::Kind kind);

inline constexpr std::size_t kMaxValueSuggestions = 20;

// Context-sensitive completions for the query text before `cursor`:
//   `:pre`          search-visible providers whose alias starts with pre
//   `field: pre`    distinct catalog values of field starting with pre
//                   (at most kMaxValueSuggestions, alphabetical)
//   anything else   field names, provider calls and a free-text hint
// Providers in `hidden` and providers invisible on the search surface are
// never offered.
std::vector<Suggestion> suggest(std::string_view partial, std::size_t cursor, const SpecDocument& doc,
                                const CatalogSnapshot& snapshot, const std::set<ProviderKey>& hidden = {});

}  // namespace humboldt
