// Copyright 2026 The HistoSeek Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "histoseek/service.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "histoseek/codec.hpp"
#include "histoseek/error.hpp"
#include "histoseek/ontology.hpp"
#include "histoseek/repository.hpp"
#include "histoseek/search.hpp"
#include "httplib.h"
#include "json.hpp"

namespace histoseek {

namespace fs = std::filesystem;
using nlohmann::json;

void validate(const ServiceConfig& config) {
  if (config.port < 0 || config.port > 65535) {
    throw InvalidArgument("port", "port must be in [0, 65535]");
  }
  if (config.host.empty()) throw InvalidArgument("host", "host is empty");
  if (!fs::is_regular_file(config.db_path)) {
    throw InvalidArgument("db_path", "database not found: " + config.db_path.string());
  }
  if (!fs::is_directory(config.profiles_dir)) {
    throw InvalidArgument("profiles_dir",
                          "profiles directory not found: " + config.profiles_dir.string());
  }
  if (config.static_ui_dir && !fs::is_directory(*config.static_ui_dir)) {
    throw InvalidArgument("static_ui_dir",
                          "static UI directory not found: " + config.static_ui_dir->string());
  }
  if (config.max_upload_bytes == 0) {
    throw InvalidArgument("max_upload_bytes", "upload limit must be positive");
  }
}

namespace {

HttpReply json_reply(int status, const json& doc) {
  return {status, "application/json", doc.dump()};
}

HttpReply error_reply(int status, std::string_view field, std::string_view message) {
  return json_reply(status, {{"error", {{"field", field}, {"message", message}}}});
}

// RFC 4648 standard alphabet; whitespace is skipped, padding optional.
std::optional<Bytes> decode_base64(std::string_view text) {
  static constexpr auto kTable = [] {
    std::array<std::int8_t, 256> t{};
    t.fill(-1);
    constexpr std::string_view kAlphabet =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    for (std::size_t i = 0; i < kAlphabet.size(); ++i) {
      t[static_cast<unsigned char>(kAlphabet[i])] = static_cast<std::int8_t>(i);
    }
    return t;
  }();
  Bytes out;
  out.reserve(text.size() / 4 * 3);
  std::uint32_t acc = 0;
  int bits = 0;
  std::size_t padding = 0;
  for (char c : text) {
    if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
    if (c == '=') {
      ++padding;
      continue;
    }
    if (padding > 0) return std::nullopt;
    const int v = kTable[static_cast<unsigned char>(c)];
    if (v < 0) return std::nullopt;
    acc = (acc << 6) | static_cast<std::uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xFF));
    }
  }
  if (padding > 2 || bits >= 6) return std::nullopt;
  return out;
}

Query parse_search_request(const json& body, std::size_t max_upload_bytes) {
  if (!body.is_object()) throw InvalidArgument("body", "request body must be a JSON object");
  Query query;

  const bool has_url = body.contains("image_url");
  const bool has_b64 = body.contains("image_b64");
  if (has_url == has_b64) {
    throw InvalidArgument("image", "exactly one of image_url and image_b64 is required");
  }
  if (has_url) {
    if (!body["image_url"].is_string()) throw InvalidArgument("image", "image_url must be a string");
    query.image = QueryImage::from_url(body["image_url"].get<std::string>());
  } else {
    if (!body["image_b64"].is_string()) throw InvalidArgument("image", "image_b64 must be a string");
    auto bytes = decode_base64(body["image_b64"].get_ref<const std::string&>());
    if (!bytes) throw InvalidArgument("image", "image_b64 is not valid base64");
    if (bytes->size() > max_upload_bytes) throw InvalidArgument("image", "image exceeds upload limit");
    query.image = QueryImage::from_bytes(std::move(*bytes));
  }

  if (body.contains("mode")) {
    if (!body["mode"].is_string()) throw InvalidArgument("mode", "mode must be a string");
    query.mode = parse_match_mode(body["mode"].get_ref<const std::string&>());
  }
  if (body.contains("tolerance")) {
    const json& t = body["tolerance"];
    if (!t.is_number_integer()) throw InvalidArgument("tolerance", "tolerance must be an integer");
    const auto value = t.get<std::int64_t>();
    if (value < 0 || value > 100) {
      throw InvalidArgument("tolerance", "tolerance must be an integer in [0, 100]");
    }
    query.tolerance = static_cast<int>(value);
  }
  if (!body.contains("domain") || !body["domain"].is_string()) {
    throw InvalidArgument("domain", "domain must be a string");
  }
  query.domain = body["domain"].get<std::string>();

  if (body.contains("relevance_range") && !body["relevance_range"].is_null()) {
    const json& r = body["relevance_range"];
    if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
      throw InvalidArgument("relevance_range", "relevance_range must be [min, max]");
    }
    query.rel_range = RelevanceRange{r[0].get<double>(), r[1].get<double>()};
  }
  validate(query);
  return query;
}

}  // namespace

struct Service::Impl {
  ServiceConfig config;
  std::shared_ptr<Fetcher> fetcher;
  Repository repo;
  ProfileSet profiles;
  httplib::Server server;
  int bound_port = -1;

  Impl(ServiceConfig cfg, std::shared_ptr<Fetcher> f)
      : config(std::move(cfg)),
        fetcher(f ? std::move(f) : std::make_shared<HttpFetcher>()),
        repo(config.db_path, Repository::Mode::kReadOnly),
        profiles(ProfileSet::load_directory(config.profiles_dir)) {}
};

Service::Service(ServiceConfig config, std::shared_ptr<Fetcher> fetcher) {
  validate(config);
  impl_ = std::make_unique<Impl>(std::move(config), std::move(fetcher));

  auto& server = impl_->server;
  server.set_payload_max_length(impl_->config.max_upload_bytes * 4 / 3 + 4096);

  const auto send = [](httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, reply.content_type);
  };
  server.Get("/api/domains", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, handle_domains());
  });
  server.Post("/api/search", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, handle_search(req.body));
  });
  server.Get(R"(/api/thumb/([^/]+))",
             [this, send](const httplib::Request& req, httplib::Response& res) {
               send(res, handle_thumb(req.matches[1].str()));
             });
  server.set_exception_handler(
      [send](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
        send(res, error_reply(500, "", "internal error"));
      });
  if (impl_->config.static_ui_dir) {
    if (!server.set_mount_point("/", impl_->config.static_ui_dir->string())) {
      throw InvalidArgument("static_ui_dir", "cannot mount static UI directory");
    }
  }
}

Service::~Service() {
  if (impl_) impl_->server.stop();
}

HttpReply Service::handle_domains() const {
  try {
    json out = json::array();
    for (const DomainBounds& b : impl_->repo.all_domain_bounds()) {
      out.push_back({{"name", b.domain}, {"rel_min", b.rel_min}, {"rel_max", b.rel_max}});
    }
    return json_reply(200, out);
  } catch (const StorageError& e) {
    return error_reply(500, "", e.what());
  }
}

HttpReply Service::handle_search(std::string_view body) const {
  json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) return error_reply(400, "body", "malformed JSON");
  try {
    const Query query = parse_search_request(doc, impl_->config.max_upload_bytes);
    const auto results = execute_search(query, impl_->repo, impl_->profiles, impl_->fetcher.get());
    json list = json::array();
    for (const SearchResult& r : results) list.push_back(json::parse(to_json_line(r)));
    return json_reply(200, {{"results", std::move(list)}});
  } catch (const InvalidArgument& e) {
    return error_reply(422, e.field(), e.what());
  } catch (const StorageError& e) {
    return error_reply(500, "", e.what());
  }
}

HttpReply Service::handle_thumb(std::string_view id) const {
  try {
    const auto image = impl_->repo.cached_image(id);
    if (!image) return error_reply(404, "id", "no cached image for this id");
    return {200, image->mime_type, std::string(image->bytes.begin(), image->bytes.end())};
  } catch (const StorageError& e) {
    return error_reply(500, "", e.what());
  }
}

int Service::bind() {
  if (impl_->bound_port >= 0) return impl_->bound_port;
  auto& server = impl_->server;
  const auto& cfg = impl_->config;
  if (cfg.port == 0) {
    impl_->bound_port = server.bind_to_any_port(cfg.host);
  } else if (server.bind_to_port(cfg.host, cfg.port)) {
    impl_->bound_port = cfg.port;
  }
  if (impl_->bound_port <= 0) {
    impl_->bound_port = -1;
    throw Error("cannot bind " + cfg.host + ":" + std::to_string(cfg.port));
  }
  return impl_->bound_port;
}

void Service::run() {
  bind();
  impl_->server.listen_after_bind();
}

void Service::stop() { impl_->server.stop(); }

bool Service::running() const { return impl_->server.is_running(); }

}  // namespace histoseek
