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

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "humboldt/catalog.hpp"
#include "humboldt/payload.hpp"
#include "humboldt/spec.hpp"
#include "json.hpp"

namespace humboldt {

enum class BuiltinKind { RecentDocuments, OwnedBy, Badged, TypeIs, NameJoinable, Favorites, EmbeddingView };

std::string_view to_string(BuiltinKind kind);

struct InputBinding {
  std::map<InputType, std::string> values;

  const std::string* get(InputType t) const;
  bool operator==(const InputBinding&) const = default;
};

struct MissingInput {
  std::vector<InputType> slots;

  bool operator==(const MissingInput&) const = default;
};

using BindResult = std::variant<InputBinding, MissingInput>;

// Carries a provider request to a remote endpoint. Implementations throw
// ProviderUnavailableError on network failure, timeout or non-2xx status.
class ProviderTransport {
 public:
  virtual ~ProviderTransport() = default;
  virtual nlohmann::json post(const std::string& endpoint, const nlohmann::json& body,
                              std::chrono::milliseconds timeout) = 0;
};

// JSON over HTTP; endpoints are resolved relative to base_url
// (e.g. "http://127.0.0.1:8081/providers/").
std::shared_ptr<ProviderTransport> make_http_transport(std::string base_url);

struct BuiltinTarget {
  BuiltinKind kind;
  // Inputs fixed by the built-in entry itself (e.g. "Endorsed" is badged/endorsed).
  InputBinding preset;
};

struct HttpTarget {
  std::string endpoint;
};

struct ProviderHandle {
  ProviderSpec spec;
  std::variant<HttpTarget, BuiltinTarget> target;

  bool is_builtin() const { return std::holds_alternative<BuiltinTarget>(target); }
};

// One row of the built-in provider table, keyed by (type, name).
struct BuiltinEntry {
  ProviderKey key;
  BuiltinKind kind;
  Representation representation;
  std::vector<InputSlot> inputs;
  InputBinding preset;
};

const std::vector<BuiltinEntry>& builtin_table();
const BuiltinEntry* find_builtin(const ProviderKey& key);

// Spec document containing every built-in provider with its canonical inputs.
SpecDocument builtin_gallery();

struct RegistryOptions {
  std::shared_ptr<ProviderTransport> transport;
  std::chrono::milliseconds timeout{5000};
};

// Read-only after construction; share freely between threads.
class ProviderRegistry {
 public:
  ProviderRegistry() = default;

  const std::vector<ProviderHandle>& providers() const noexcept { return providers_; }
  const ProviderHandle* find(const ProviderKey& key) const;
  // Providers whose normalised name (see text::provider_alias) equals alias.
  std::vector<const ProviderHandle*> find_by_alias(std::string_view alias) const;
  ProviderTransport* transport() const noexcept { return options_.transport.get(); }
  std::chrono::milliseconds timeout() const noexcept { return options_.timeout; }

 private:
  friend ProviderRegistry register_providers(const SpecDocument& doc, RegistryOptions options);

  std::vector<ProviderHandle> providers_;
  std::map<ProviderKey, std::size_t> index_;
  RegistryOptions options_;
};

// Wires every provider to its HTTP endpoint or built-in implementation.
// Throws UnknownBuiltinError for an endpoint-less provider with no built-in.
ProviderRegistry register_providers(const SpecDocument& doc, RegistryOptions options = {});

// Whether every required slot of spec can be bound from selection alone:
// TABLEID needs a table, USERID needs an owner field, TEXT never blocks.
bool inputs_bindable(const ProviderSpec& spec, const DataArtifact* selection);

// Providers visible on surface whose required inputs are bindable, in
// registration order. Without a selection only zero-input providers qualify.
std::vector<ProviderSpec> applicable_providers(const ProviderRegistry& registry, Surface surface,
                                               const DataArtifact* selection);

// Binds each input slot in declaration order:
//   TABLEID  the selection's id when it is a table, else the next free arg
//   USERID   the next free arg, else the selection's owner
//   TEXT     the next free arg, else a value derived from the selection
//            (first badge for "badged" providers, kind for "type" providers,
//            owner for "owned" providers, the artifact name otherwise)
BindResult bind_inputs(const ProviderSpec& spec, const DataArtifact* selection,
                       std::span<const std::string> free_args = {});

// Runs the provider and validates the payload against the declared
// representation and the snapshot. Throws ProviderUnavailableError,
// RepresentationMismatchError, DanglingArtifactError, MalformedPayloadError or
// MissingInputError.
RepresentationPayload fetch(const ProviderRegistry& registry, const ProviderHandle& provider,
                            const InputBinding& binding, const CatalogSnapshot& snapshot);

nlohmann::json request_body(const InputBinding& binding);

}  // namespace humboldt
