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

#ifndef HISTOSEEK_SERVICE_HPP_
#define HISTOSEEK_SERVICE_HPP_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "histoseek/fetch.hpp"

namespace histoseek {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 binds an ephemeral port
  std::filesystem::path db_path;
  std::filesystem::path profiles_dir;
  std::optional<std::filesystem::path> static_ui_dir;
  std::size_t max_upload_bytes = std::size_t{16} << 20;
};

// Throws InvalidArgument naming the bad field: port outside [0, 65535],
// missing database file, profiles or static directory, zero upload limit.
void validate(const ServiceConfig& config);

// Transport-independent response, so handlers can be exercised without
// sockets.
struct HttpReply {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Read-only HTTP front end over a repository and a profile set.
//
//   GET  /api/domains     -> [{"name","rel_min","rel_max"}]
//   POST /api/search      -> {"results":[...]} or 4xx {"error":{"field","message"}}
//   GET  /api/thumb/{id}  -> cached image bytes, 404 when absent
//
// Static UI assets are mounted at "/" when static_ui_dir is set.
class Service {
 public:
  // `fetcher` resolves image_url queries; nullptr installs an HttpFetcher.
  explicit Service(ServiceConfig config, std::shared_ptr<Fetcher> fetcher = nullptr);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  HttpReply handle_domains() const;
  HttpReply handle_search(std::string_view body) const;
  HttpReply handle_thumb(std::string_view id) const;

  // Binds the listening socket and returns the bound port. Throws Error when
  // the address is unavailable.
  int bind();
  // Serves until stop(); bind() is called first if needed.
  void run();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace histoseek

#endif  // HISTOSEEK_SERVICE_HPP_
