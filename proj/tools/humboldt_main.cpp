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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "humboldt/error.hpp"
#include "humboldt/rest.hpp"
#include "humboldt/service.hpp"

namespace {

using namespace humboldt;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::chrono::milliseconds provider_timeout() {
  if (const char* env = std::getenv("HUMBOLDT_PROVIDER_TIMEOUT_MS")) {
    try {
      return std::chrono::milliseconds(std::stol(env));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring HUMBOLDT_PROVIDER_TIMEOUT_MS=" << env << "\n";
    }
  }
  return std::chrono::milliseconds(5000);
}

ServiceOptions service_options(const std::string& provider_base, const std::string& state) {
  ServiceOptions opts;
  if (!provider_base.empty()) opts.registry.transport = make_http_transport(provider_base);
  opts.registry.timeout = provider_timeout();
  if (!state.empty()) opts.state_file = state;
  return opts;
}

int cmd_validate(const std::string& spec_path) {
  const auto doc = parse_spec(read_file(spec_path));
  const auto violations = validate_spec(doc);
  for (const auto& v : violations) std::cout << to_string(v.kind) << " " << v.path << ": " << v.message << "\n";
  for (const auto& w : resolve_custom_content(doc).warnings) {
    std::cout << "warning: team '" << w.team << "' references "
              << (w.kind == ContentWarning::Kind::UnresolvedReference ? "unknown" : "ambiguous") << " provider '"
              << w.reference << "'\n";
  }
  if (!violations.empty()) return 1;
  std::cout << "ok: " << doc.providers.size() << " providers\n";
  return 0;
}

int cmd_query(const std::string& spec_path, const std::string& catalog_path, const std::string& provider_base,
              const std::string& q) {
  auto catalog = std::make_shared<const CatalogSnapshot>(load_catalog(read_file(catalog_path)));
  DiscoveryService service(parse_spec(read_file(spec_path)), catalog, service_options(provider_base, ""));
  try {
    for (const auto& id : service.search(q, std::string_view("anonymous")).ids) std::cout << id << "\n";
  } catch (const ParseError& e) {
    std::cerr << "parse error at position " << e.position() << ": " << e.what() << "\n";
    return 2;
  } catch (const LexError& e) {
    std::cerr << "parse error at position " << e.position() << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_serve(const std::string& spec_path, const std::string& catalog_path, const std::string& state,
              const std::string& host, int port, const std::string& provider_base) {
  auto catalog = std::make_shared<const CatalogSnapshot>(load_catalog(read_file(catalog_path)));
  auto service = std::make_shared<DiscoveryService>(parse_spec(read_file(spec_path)), catalog,
                                                    service_options(provider_base, state));
  RestServer server(service);
  std::cerr << "humboldt: serving " << catalog->size() << " artifacts on http://" << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "humboldt: cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"humboldt - metadata-driven data discovery"};
  app.require_subcommand(1);

  std::string spec_path, catalog_path, state_path, provider_base, host = "127.0.0.1", query_text;
  int port = 8080;
  if (const char* env = std::getenv("HUMBOLDT_PORT")) port = std::atoi(env);

  auto* validate = app.add_subcommand("validate", "Check a provider specification");
  validate->add_option("spec", spec_path, "Specification file")->required()->check(CLI::ExistingFile);

  auto* serve = app.add_subcommand("serve", "Run the REST API");
  serve->add_option("--spec", spec_path, "Specification file")->required()->check(CLI::ExistingFile);
  serve->add_option("--catalog", catalog_path, "Catalog file")->required()->check(CLI::ExistingFile);
  serve->add_option("--state", state_path, "Config state file (created on first write)");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--port", port, "Listen port (default $HUMBOLDT_PORT or 8080)");
  serve->add_option("--provider-base", provider_base, "Base URL for HTTP providers");

  auto* query = app.add_subcommand("query", "Run a search and print ranked ids");
  query->add_option("--spec", spec_path, "Specification file")->required()->check(CLI::ExistingFile);
  query->add_option("--catalog", catalog_path, "Catalog file")->required()->check(CLI::ExistingFile);
  query->add_option("--provider-base", provider_base, "Base URL for HTTP providers");
  query->add_option("query", query_text, "Query text")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(spec_path);
    if (*query) return cmd_query(spec_path, catalog_path, provider_base, query_text);
    if (*serve) return cmd_serve(spec_path, catalog_path, state_path, host, port, provider_base);
  } catch (const humboldt::Error& e) {
    std::cerr << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
