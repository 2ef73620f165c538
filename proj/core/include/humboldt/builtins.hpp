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

#include "humboldt/catalog.hpp"
#include "humboldt/payload.hpp"
#include "humboldt/providers.hpp"

namespace humboldt {

// Reference implementations of the built-in providers.
//
//   RecentDocuments  LIST of artifacts with a created_at timestamp, newest first
//   OwnedBy          LIST of artifacts whose owner equals USERID
//   Badged           LIST of artifacts whose badge list contains TEXT
//   TypeIs           LIST of artifacts whose kind equals TEXT
//   NameJoinable     GRAPH over the tables connected to TABLEID by shared
//                    column names; one undirected edge per sharing pair
//   Favorites        LIST of artifacts with favorite == true
//   EmbeddingView    EMBEDDING of every artifact carrying a position
//
// Text comparisons are ASCII case-insensitive. LIST items other than recency
// are ordered by id. Throws MissingInputError when a required input is unbound.
RepresentationPayload eval_builtin(BuiltinKind kind, const InputBinding& binding, const CatalogSnapshot& snapshot);

}  // namespace humboldt
