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

#include <httplib.h>

#include "humboldt/error.hpp"
#include "humboldt/providers.hpp"

namespace humboldt {

namespace {

class HttpTransport final : public ProviderTransport {
 public:
  explicit HttpTransport(std::string base_url) {
    auto scheme_end = base_url.find("://");
    auto host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    auto path_start = base_url.find('/', host_start);
    if (path_start == std::string::npos) {
      origin_ = base_url;
      prefix_ = "/";
    } else {
      origin_ = base_url.substr(0, path_start);
      prefix_ = base_url.substr(path_start);
    }
    if (prefix_.back() != '/') prefix_ += '/';
  }

  nlohmann::json post(const std::string& endpoint, const nlohmann::json& body,
                      std::chrono::milliseconds timeout) override {
    httplib::Client client(origin_);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);

    std::string path = endpoint;
    if (!path.empty() && path.front() == '/') path.erase(0, 1);
    path = prefix_ + path;

    auto res = client.Post(path, body.dump(), "application/json");
    if (!res) throw ProviderUnavailableError(endpoint, httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300) {
      throw ProviderUnavailableError(endpoint, "HTTP status " + std::to_string(res->status));
    }
    try {
      return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error&) {
      throw MalformedPayloadError("provider '" + endpoint + "' returned invalid JSON");
    }
  }

 private:
  std::string origin_;
  std::string prefix_;
};

}  // namespace

std::shared_ptr<ProviderTransport> make_http_transport(std::string base_url) {
  return std::make_shared<HttpTransport>(std::move(base_url));
}

}  // namespace humboldt
