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

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "humboldt/service.hpp"
#include "json.hpp"

namespace humboldt {

struct RestRequest {
  std::string method;  // "GET" or "PUT"
  std::string path;    // decoded, without query string
  std::multimap<std::string, std::string> params;
  std::map<std::string, std::string> headers;  // lower-case names
  std::string body;
};

struct RestResponse {
  int status = 200;
  nlohmann::json body;
};

// Routes one request against the service. Never throws; engine errors become
// {"error": {...}} bodies with a matching status.
RestResponse handle_rest(DiscoveryService& service, const RestRequest& request);

// JSON API over HTTP. The caller is identified by the X-Humboldt-User,
// X-Humboldt-Role and X-Humboldt-Team headers.
class RestServer {
 public:
  explicit RestServer(std::shared_ptr<DiscoveryService> service);
  ~RestServer();
  RestServer(const RestServer&) = delete;
  RestServer& operator=(const RestServer&) = delete;

  // Binds and starts serving on a background thread. Port 0 picks a free
  // port. Returns the bound port.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  // Binds and serves on the calling thread until stop().
  bool listen(const std::string& host, int port);
  void stop();
  int port() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace humboldt
