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

#include <string_view>

#include "json.hpp"

namespace humboldt {

using OrderedJson = nlohmann::ordered_json;

// Reads JSON as it appears in hand-written specification documents. On top of
// RFC 8259 it accepts
//   - a trailing comma before '}' or ']'
//   - an array whose elements are `"key": value` members, read as one object
//     (e.g. `"custom": [ "field": "home", "content": [...] ]`).
// Object key order is preserved. Throws SyntaxError carrying the path of the
// enclosing element and the line/column of the offending byte.
OrderedJson parse_lenient_json(std::string_view text);

}  // namespace humboldt
