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

#include "fixture_site.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "httplib.h"

namespace histoseek::testing {

struct FixtureSite::Impl {
  struct Resource {
    int status = 200;
    std::string content_type;
    std::string body;
    std::string location;
  };

  httplib::Server server;
  std::thread thread;
  int port = 0;
  mutable std::mutex mu;
  std::map<std::string, Resource> resources;
  std::vector<std::string> log;
};

FixtureSite::FixtureSite() : impl_(std::make_unique<Impl>()) {
  impl_->server.Get(".*", [this](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard lock(impl_->mu);
    impl_->log.push_back(req.path);
    const auto it = impl_->resources.find(req.path);
    if (it == impl_->resources.end()) {
      res.status = 404;
      res.set_content("not found", "text/plain");
      return;
    }
    res.status = it->second.status;
    if (!it->second.location.empty()) res.set_header("Location", it->second.location);
    res.set_content(it->second.body, it->second.content_type);
  });
}

FixtureSite::~FixtureSite() { stop(); }

void FixtureSite::add(const std::string& path, std::string content_type, std::string body) {
  std::lock_guard lock(impl_->mu);
  impl_->resources[path] = {200, std::move(content_type), std::move(body), {}};
}

void FixtureSite::add(const std::string& path, std::string content_type, const Bytes& body) {
  add(path, std::move(content_type), std::string(body.begin(), body.end()));
}

void FixtureSite::add_redirect(const std::string& path, const std::string& location) {
  std::lock_guard lock(impl_->mu);
  impl_->resources[path] = {302, "text/plain", "", location};
}

void FixtureSite::start() {
  impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
  if (impl_->port <= 0) throw std::runtime_error("fixture site cannot bind");
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void FixtureSite::stop() {
  if (impl_->thread.joinable()) {
    impl_->server.stop();
    impl_->thread.join();
  }
}

std::string FixtureSite::base_url() const {
  return "http://127.0.0.1:" + std::to_string(impl_->port);
}

std::vector<std::string> FixtureSite::requests() const {
  std::lock_guard lock(impl_->mu);
  return impl_->log;
}

std::size_t FixtureSite::request_count(const std::string& path) const {
  std::lock_guard lock(impl_->mu);
  return static_cast<std::size_t>(std::count(impl_->log.begin(), impl_->log.end(), path));
}

namespace {

ClientReply to_reply(const httplib::Result& result) {
  if (!result) throw std::runtime_error("request failed: " + httplib::to_string(result.error()));
  return {result->status, result->get_header_value("Content-Type"), result->body};
}

}  // namespace

ClientReply http_get(const std::string& base_url, const std::string& path) {
  httplib::Client client(base_url);
  return to_reply(client.Get(path));
}

ClientReply http_post_json(const std::string& base_url, const std::string& path,
                           const std::string& body) {
  httplib::Client client(base_url);
  return to_reply(client.Post(path, body, "application/json"));
}

}  // namespace histoseek::testing
