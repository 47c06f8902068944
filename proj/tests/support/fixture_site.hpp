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

#ifndef HISTOSEEK_TESTS_FIXTURE_SITE_HPP_
#define HISTOSEEK_TESTS_FIXTURE_SITE_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "histoseek/codec.hpp"

namespace histoseek::testing {

// A loopback HTTP server with a fixed set of resources. Unknown paths give
// 404. Every request path is logged.
class FixtureSite {
 public:
  FixtureSite();
  ~FixtureSite();
  FixtureSite(const FixtureSite&) = delete;
  FixtureSite& operator=(const FixtureSite&) = delete;

  void add(const std::string& path, std::string content_type, std::string body);
  void add(const std::string& path, std::string content_type, const Bytes& body);
  void add_redirect(const std::string& path, const std::string& location);

  // Binds an ephemeral port on 127.0.0.1 and serves on a background thread.
  void start();
  void stop();

  // "http://127.0.0.1:<port>"
  std::string base_url() const;
  std::string url(const std::string& path) const { return base_url() + path; }

  std::vector<std::string> requests() const;
  std::size_t request_count(const std::string& path) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct ClientReply {
  int status = 0;
  std::string content_type;
  std::string body;
};

// Minimal blocking client for talking to loopback servers in tests.
ClientReply http_get(const std::string& base_url, const std::string& path);
ClientReply http_post_json(const std::string& base_url, const std::string& path,
                           const std::string& body);

}  // namespace histoseek::testing

#endif  // HISTOSEEK_TESTS_FIXTURE_SITE_HPP_
