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

#include "humboldt/error.hpp"

namespace humboldt {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

}  // namespace

MissingInputError::MissingInputError(const std::string& provider, std::vector<std::string> slots)
    : Error("MissingInput", "provider '" + provider + "' is missing required input " + join(slots)),
      slots_(std::move(slots)) {}

ParseError::ParseError(std::size_t position, std::vector<std::string> expected)
    : Error("ParseError",
            "unexpected token at position " + std::to_string(position) + ", expected one of: " + join(expected)),
      position_(position),
      expected_(std::move(expected)) {}

UnknownProviderError::UnknownProviderError(const std::string& reference, std::vector<std::string> candidates)
    : Error("UnknownProvider",
            candidates.empty() ? "unknown provider '" + reference + "'"
                               : "ambiguous provider '" + reference + "', candidates: " + join(candidates)),
      candidates_(std::move(candidates)) {}

}  // namespace humboldt
