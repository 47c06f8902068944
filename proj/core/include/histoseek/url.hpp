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

#ifndef HISTOSEEK_URL_HPP_
#define HISTOSEEK_URL_HPP_

#include <optional>
#include <string>
#include <string_view>

namespace histoseek {

// An absolute URI split into its RFC 3986 components.
class Url {
 public:
  // Nullopt unless `text` is an absolute URI (has a scheme).
  static std::optional<Url> parse(std::string_view text);

  // RFC 3986 reference resolution against this URL. The result keeps the
  // reference's fragment; see canonical().
  std::optional<Url> resolve(std::string_view reference) const;

  // Lowercase scheme and host, default port removed, dot segments
  // resolved, empty path replaced by "/" and the fragment dropped. Two URLs
  // naming the same resource for crawling purposes compare equal here.
  Url canonical() const;

  Url without_fragment() const;

  const std::string& scheme() const noexcept { return scheme_; }
  const std::string& host() const noexcept { return host_; }
  // Explicit port or the scheme default (80/443); 0 when unknown.
  int port() const noexcept;
  const std::string& path() const noexcept { return path_; }
  const std::optional<std::string>& query() const noexcept { return query_; }
  const std::optional<std::string>& fragment() const noexcept { return fragment_; }

  bool is_http() const noexcept { return scheme_ == "http" || scheme_ == "https"; }

  // "scheme://host[:port]" as used for connections and politeness keys.
  std::string origin() const;
  // Path plus "?query"; "/" when both are empty.
  std::string path_and_query() const;

  std::string str() const;

  friend bool operator==(const Url& a, const Url& b) { return a.str() == b.str(); }

 private:
  std::string scheme_;
  bool has_authority_ = false;
  std::string userinfo_;
  std::string host_;
  std::string port_;
  std::string path_;
  std::optional<std::string> query_;
  std::optional<std::string> fragment_;

  friend struct UrlAccess;
};

// Removes "." and ".." segments (RFC 3986 section 5.2.4).
std::string remove_dot_segments(std::string_view path);

}  // namespace histoseek

#endif  // HISTOSEEK_URL_HPP_
