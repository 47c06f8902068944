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

#include "histoseek/fetch.hpp"

#include <algorithm>
#include <cctype>

#include "histoseek/error.hpp"
#include "httplib.h"

namespace histoseek {
namespace {

std::string media_type(const std::string& header) {
  std::string out = header.substr(0, header.find(';'));
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](unsigned char c) { return std::isspace(c) != 0; }),
            out.end());
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

HttpFetcher::HttpFetcher(HttpFetcherOptions options) : options_(std::move(options)) {}

bool HttpFetcher::tls_supported() noexcept {
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
  return true;
#else
  return false;
#endif
}

FetchResponse HttpFetcher::get(const Url& start) {
  Url url = start.without_fragment();
  for (int hop = 0;; ++hop) {
    if (!url.is_http()) throw FetchError("unsupported scheme in " + url.str());
    if (url.scheme() == "https" && !tls_supported()) {
      throw FetchError("https is not supported by this build: " + url.str());
    }
    httplib::Client client(url.origin());
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
        options_.timeout - secs);
    client.set_connection_timeout(secs.count(), static_cast<time_t>(usecs.count()));
    client.set_read_timeout(secs.count(), static_cast<time_t>(usecs.count()));
    client.set_follow_location(false);

    const httplib::Headers headers = {{"User-Agent", options_.user_agent}};
    std::string body;
    bool too_large = false;
    auto result = client.Get(
        url.path_and_query(), headers,
        [](const httplib::Response&) { return true; },
        [&](const char* data, std::size_t len) {
          if (body.size() + len > options_.max_body_bytes) {
            too_large = true;
            return false;
          }
          body.append(data, len);
          return true;
        });
    if (too_large) {
      throw FetchError("response from " + url.str() + " exceeds " +
                       std::to_string(options_.max_body_bytes) + " bytes");
    }
    if (!result) {
      throw FetchError("GET " + url.str() + " failed: " + httplib::to_string(result.error()));
    }
    const int status = result->status;
    if (status >= 300 && status < 400 && result->has_header("Location")) {
      if (hop >= options_.max_redirects) {
        throw FetchError("too many redirects starting at " + start.str());
      }
      const auto next = url.resolve(result->get_header_value("Location"));
      if (!next) throw FetchError("invalid redirect target from " + url.str());
      url = next->without_fragment();
      continue;
    }
    FetchResponse response;
    response.status = status;
    response.content_type = media_type(result->get_header_value("Content-Type"));
    response.body = std::move(body);
    response.url = url.str();
    return response;
  }
}

}  // namespace histoseek
