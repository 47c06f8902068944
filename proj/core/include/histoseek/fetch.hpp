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

#ifndef HISTOSEEK_FETCH_HPP_
#define HISTOSEEK_FETCH_HPP_

#include <chrono>
#include <cstddef>
#include <string>

#include "histoseek/url.hpp"

namespace histoseek {

struct FetchResponse {
  int status = 0;
  std::string content_type;  // lowercase media type without parameters
  std::string body;
  std::string url;  // final URL after redirects
};

// Retrieves a URL. Implementations throw FetchError when no HTTP response
// could be obtained; any HTTP status is returned as-is.
class Fetcher {
 public:
  virtual ~Fetcher() = default;
  virtual FetchResponse get(const Url& url) = 0;
};

struct HttpFetcherOptions {
  std::string user_agent = "histoseek/0.1";
  std::chrono::milliseconds timeout{10000};
  std::size_t max_body_bytes = std::size_t{32} << 20;
  int max_redirects = 5;
};

// Plain HTTP/1.1 client; https is available when the library was built
// with TLS support. Safe to use from several threads at once.
class HttpFetcher : public Fetcher {
 public:
  explicit HttpFetcher(HttpFetcherOptions options = {});
  FetchResponse get(const Url& url) override;

  static bool tls_supported() noexcept;

 private:
  HttpFetcherOptions options_;
};

}  // namespace histoseek

#endif  // HISTOSEEK_FETCH_HPP_
