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

#include "humboldt/rest.hpp"

#include <regex>
#include <thread>

#include "httplib.h"
#include "humboldt/error.hpp"
#include "humboldt/query.hpp"
#include "humboldt/text.hpp"

namespace humboldt {

using nlohmann::json;

namespace {

struct HttpError {
  int status;
  json body;
};

HttpError bad_request(const std::string& code, const std::string& message) {
  return {400, json{{"error", {{"code", code}, {"message", message}}}}};
}

int status_for(const std::string& code) {
  if (code == "LexError" || code == "ParseError" || code == "MissingInput" || code == "SchemaError" ||
      code == "SyntaxError") {
    return 400;
  }
  if (code == "UnknownProvider" || code == "UnknownArtifact") return 404;
  if (code == "UnknownProviderReference") return 422;
  if (code == "UnauthorizedScope") return 403;
  if (code == "ProviderUnavailable" || code == "RepresentationMismatch" || code == "DanglingArtifact" ||
      code == "MalformedPayload" || code == "UnknownBuiltin") {
    return 502;
  }
  return 500;
}

json error_body(const Error& e) {
  json err{{"code", e.code()}, {"message", e.what()}};
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    err["position"] = p->position();
    err["expected"] = p->expected();
  } else if (const auto* l = dynamic_cast<const LexError*>(&e)) {
    err["position"] = l->position();
  } else if (const auto* u = dynamic_cast<const UnknownProviderError*>(&e)) {
    err["candidates"] = u->candidates();
  } else if (const auto* m = dynamic_cast<const MissingInputError*>(&e)) {
    err["slots"] = m->slots();
  }
  return json{{"error", err}};
}

std::optional<std::string> param(const RestRequest& req, const std::string& name) {
  auto it = req.params.find(name);
  if (it == req.params.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> header(const RestRequest& req, const std::string& name) {
  auto it = req.headers.find(name);
  if (it == req.headers.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

Caller caller_of(const RestRequest& req) {
  Caller c;
  if (auto u = header(req, "x-humboldt-user")) c.user_id = *u;
  if (auto r = header(req, "x-humboldt-role")) {
    auto role = parse_role(*r);
    if (!role) throw bad_request("SchemaError", "unknown role '" + *r + "'");
    c.role = *role;
  }
  c.team = header(req, "x-humboldt-team");
  return c;
}

// Stored config wins; the team header fills in for users without one.
UserConfig user_of(const DiscoveryService& service, const Caller& caller) {
  auto user = service.user_config(caller.user_id);
  if (!user.team) user.team = caller.team;
  return user;
}

json provider_json(const ProviderSpec& spec) {
  auto j = json::parse(to_json(spec).dump());
  j["alias"] = text::provider_alias(spec.name);
  return j;
}

json views_json(const std::vector<View>& views) {
  json out = json::array();
  for (const auto& v : views) out.push_back(to_json(v));
  return json{{"views", out}};
}

json node_json(const query::NodePtr& node) {
  if (!node) return nullptr;
  return std::visit(
      [](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, query::Keyword>) {
          return {{"keyword", n.text}};
        } else if constexpr (std::is_same_v<T, query::FieldPill>) {
          return {{"field", n.field}, {"value", n.value}};
        } else if constexpr (std::is_same_v<T, query::ProviderCall>) {
          return {{"call", n.name}, {"args", n.args}};
        } else if constexpr (std::is_same_v<T, query::And>) {
          return {{"and", {node_json(n.left), node_json(n.right)}}};
        } else if constexpr (std::is_same_v<T, query::Or>) {
          return {{"or", {node_json(n.left), node_json(n.right)}}};
        } else if constexpr (std::is_same_v<T, query::Not>) {
          return {{"not", node_json(n.child)}};
        } else {
          return {{"group", node_json(n.child)}};
        }
      },
      node->value);
}

json artifact_summary(const CatalogSnapshot& snapshot, const Score& score) {
  json j{{"id", score.artifact_id}, {"score", score.value}};
  if (auto it = snapshot.artifacts().find(score.artifact_id); it != snapshot.artifacts().end()) {
    j["name"] = it->second.name;
    j["kind"] = it->second.kind;
  }
  return j;
}

ConfigTarget config_target(const std::smatch& m, const Caller& caller) {
  const std::string scope = m[1];
  const std::string name = m[2].matched ? std::string(m[2]) : std::string();
  if (scope == "admin") {
    if (!name.empty()) throw HttpError{404, json{{"error", {{"code", "NotFound"}, {"message", "no such route"}}}}};
    return {ConfigScope::Admin, ""};
  }
  if (scope == "team") {
    if (name.empty()) {
      if (!caller.team) throw bad_request("SchemaError", "team name required");
      return {ConfigScope::Team, *caller.team};
    }
    return {ConfigScope::Team, name};
  }
  return {ConfigScope::User, name.empty() ? caller.user_id : name};
}

RestResponse route(DiscoveryService& service, const RestRequest& req) {
  static const std::regex views_re(R"(/api/views/([^/]+)/([^/]+))");
  static const std::regex artifact_re(R"(/api/artifacts/([^/]+))");
  static const std::regex related_re(R"(/api/artifacts/([^/]+)/related)");
  static const std::regex config_re(R"(/api/config/(admin|team|user)(?:/([^/]+))?)");

  const Caller caller = caller_of(req);
  const std::string& path = req.path;
  std::smatch m;

  if (req.method == "PUT") {
    if (!std::regex_match(path, m, config_re)) throw HttpError{404, json{{"error", {{"code", "NotFound"}, {"message", "no such route"}}}}};
    json change;
    try {
      change = json::parse(req.body.empty() ? std::string("{}") : req.body);
    } catch (const json::exception& e) {
      throw bad_request("SyntaxError", e.what());
    }
    return {200, service.update_config(caller, config_target(m, caller), change)};
  }
  if (req.method != "GET") {
    throw HttpError{405, json{{"error", {{"code", "MethodNotAllowed"}, {"message", req.method}}}}};
  }

  const auto user = user_of(service, caller);
  if (path == "/api/providers") {
    Surface surface = Surface::Discovery;
    if (auto s = param(req, "surface")) {
      auto parsed = parse_surface(*s);
      if (!parsed) throw bad_request("SchemaError", "unknown surface '" + *s + "'");
      surface = *parsed;
    }
    json out = json::array();
    for (const auto& spec : service.providers_for(user, surface)) out.push_back(provider_json(spec));
    return {200, json{{"providers", out}}};
  }
  if (path == "/api/overviews") return {200, views_json(service.overviews(user))};
  if (path == "/api/search") {
    const auto results = service.search(param(req, "q").value_or(""), user);
    const auto snapshot = service.catalog();
    json items = json::array();
    for (const auto& s : results.scores) items.push_back(artifact_summary(*snapshot, s));
    return {200, json{{"ids", results.ids}, {"results", items}}};
  }
  if (path == "/api/suggest") {
    const auto q = param(req, "q").value_or("");
    std::size_t cursor = q.size();
    if (auto c = param(req, "cursor")) {
      try {
        cursor = std::min<std::size_t>(std::stoul(*c), q.size());
      } catch (const std::exception&) {
        throw bad_request("SchemaError", "cursor must be a non-negative integer");
      }
    }
    json out = json::array();
    for (const auto& s : service.suggest(q, cursor, user)) {
      out.push_back({{"kind", to_string(s.kind)}, {"text", s.text}, {"insert", s.insert},
                     {"replace_from", s.replace_from}});
    }
    return {200, json{{"suggestions", out}}};
  }
  if (path == "/api/parse") {
    const auto q = query::parse_query(param(req, "q").value_or(""));
    return {200, json{{"ast", node_json(q.root)}, {"canonical", query::print(q)}}};
  }
  if (std::regex_match(path, m, views_re)) {
    const ProviderKey key{m[1], m[2]};
    const auto* provider = service.registry().find(key);
    if (!provider) throw UnknownProviderError(key.to_string(), {});
    InputBinding binding;
    if (auto sel = param(req, "selection")) {
      const auto snapshot = service.catalog();
      auto it = snapshot->artifacts().find(*sel);
      if (it == snapshot->artifacts().end()) throw UnknownArtifactError(*sel);
      const auto bound = bind_inputs(provider->spec, &it->second);
      if (const auto* b = std::get_if<InputBinding>(&bound)) binding = *b;
    }
    for (const auto& [k, v] : req.params) {
      if (!text::istarts_with(k, "input.")) continue;
      auto type = parse_input_type(k.substr(6));
      if (!type) throw bad_request("SchemaError", "unknown input type '" + k.substr(6) + "'");
      binding.values[*type] = v;
    }
    return {200, to_json(service.filter_view(key, param(req, "q").value_or(""), binding, user))};
  }
  if (std::regex_match(path, m, related_re)) return {200, views_json(service.explore(std::string(m[1]), user))};
  if (std::regex_match(path, m, artifact_re)) {
    const auto snapshot = service.catalog();
    auto artifact = get_artifact(*snapshot, std::string(m[1]));
    if (!artifact) throw UnknownArtifactError(m[1]);
    json preview = json::object();
    for (const auto& [k, v] : artifact->fields) preview[k] = display_value(v);
    return {200, json{{"artifact", to_json(*artifact)}, {"preview", preview}}};
  }
  if (std::regex_match(path, m, config_re)) return {200, service.get_config(caller, config_target(m, caller))};
  throw HttpError{404, json{{"error", {{"code", "NotFound"}, {"message", "no such route: " + path}}}}};
}

}  // namespace

RestResponse handle_rest(DiscoveryService& service, const RestRequest& request) {
  try {
    return route(service, request);
  } catch (const HttpError& e) {
    return {e.status, e.body};
  } catch (const Error& e) {
    return {status_for(e.code()), error_body(e)};
  } catch (const std::exception& e) {
    return {500, json{{"error", {{"code", "InternalError"}, {"message", e.what()}}}}};
  }
}

struct RestServer::Impl {
  std::shared_ptr<DiscoveryService> service;
  httplib::Server server;
  std::thread thread;
  int port = -1;

  void handle(const httplib::Request& req, httplib::Response& res) {
    RestRequest r{req.method, req.path, {}, {}, req.body};
    for (const auto& [k, v] : req.params) r.params.emplace(k, v);
    for (const auto& [k, v] : req.headers) r.headers[text::to_lower(k)] = v;
    const auto out = handle_rest(*service, r);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  }
};

RestServer::RestServer(std::shared_ptr<DiscoveryService> service) : impl_(std::make_unique<Impl>()) {
  impl_->service = std::move(service);
  auto handler = [impl = impl_.get()](const httplib::Request& req, httplib::Response& res) { impl->handle(req, res); };
  impl_->server.Get(R"(/api/.*)", handler);
  impl_->server.Put(R"(/api/.*)", handler);
}

RestServer::~RestServer() { stop(); }

int RestServer::start(const std::string& host, int port) {
  impl_->port = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (impl_->port < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([impl = impl_.get()] { impl->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

bool RestServer::listen(const std::string& host, int port) {
  impl_->port = port;
  return impl_->server.listen(host, port);
}

void RestServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int RestServer::port() const noexcept { return impl_->port; }

}  // namespace humboldt
