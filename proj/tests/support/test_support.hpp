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
#include <condition_variable>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "humboldt/catalog.hpp"
#include "humboldt/spec.hpp"
#include "json.hpp"

namespace humboldt::testing {

std::string read_file(const std::string& path);
std::string fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);
CatalogPtr fixture_catalog(const std::string& name = "catalog.json");
SpecDocument fixture_spec(const std::string& name = "spec.json");

// Splices provider objects and top-level member fragments (`"key": value`)
// into one document, byte for byte.
std::string assemble_document(const std::vector<std::string>& providers, const std::vector<std::string>& members = {});
// Provider objects named Team, Favorites, Shared, Endorsed and Recommended.
std::vector<std::string> home_page_providers();

// Stand-in for remote metadata providers. Every endpoint is served under
// base_url(); unregistered endpoints answer 404.
class MockProviderServer {
 public:
  using Handler = std::function<nlohmann::json(const nlohmann::json& request)>;

  MockProviderServer();
  ~MockProviderServer();
  MockProviderServer(const MockProviderServer&) = delete;
  MockProviderServer& operator=(const MockProviderServer&) = delete;

  void on(const std::string& endpoint, Handler handler);
  void reply(const std::string& endpoint, nlohmann::json body);
  void reply_raw(const std::string& endpoint, int status, std::string body);
  // Holds the response for `delay` (or until shutdown) before answering.
  void stall(const std::string& endpoint, std::chrono::milliseconds delay, nlohmann::json body = {});

  std::string base_url() const;
  int calls(const std::string& endpoint) const;
  nlohmann::json last_request(const std::string& endpoint) const;

 private:
  struct Route {
    Handler handler;
    int status = 200;
    std::string raw;
    std::chrono::milliseconds delay{0};
  };
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace humboldt::testing
