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

#include "histoseek/url.hpp"

#include <algorithm>
#include <cctype>

namespace histoseek {
namespace {

struct Reference {
  std::optional<std::string> scheme;
  bool has_authority = false;
  std::string userinfo;
  std::string host;
  std::string port;
  std::string path;
  std::optional<std::string> query;
  std::optional<std::string> fragment;
};

bool is_scheme_char(char c, bool first) {
  const auto u = static_cast<unsigned char>(c);
  if (std::isalpha(u)) return true;
  return !first && (std::isdigit(u) || c == '+' || c == '-' || c == '.');
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::optional<Reference> parse_reference(std::string_view text) {
  Reference ref;
  std::string_view rest = text;

  const auto hash = rest.find('#');
  if (hash != std::string_view::npos) {
    ref.fragment = std::string(rest.substr(hash + 1));
    rest = rest.substr(0, hash);
  }
  const auto question = rest.find('?');
  if (question != std::string_view::npos) {
    ref.query = std::string(rest.substr(question + 1));
    rest = rest.substr(0, question);
  }

  const auto colon = rest.find(':');
  if (colon != std::string_view::npos && colon > 0) {
    const auto slash = rest.find('/');
    if (slash == std::string_view::npos || colon < slash) {
      bool valid = true;
      for (std::size_t i = 0; i < colon; ++i) {
        if (!is_scheme_char(rest[i], i == 0)) {
          valid = false;
          break;
        }
      }
      if (valid) {
        ref.scheme = lower(std::string(rest.substr(0, colon)));
        rest = rest.substr(colon + 1);
      }
    }
  }

  if (rest.size() >= 2 && rest[0] == '/' && rest[1] == '/') {
    ref.has_authority = true;
    rest = rest.substr(2);
    const auto end = rest.find('/');
    std::string_view authority = rest.substr(0, end);
    rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end);

    const auto at = authority.rfind('@');
    if (at != std::string_view::npos) {
      ref.userinfo = std::string(authority.substr(0, at));
      authority = authority.substr(at + 1);
    }
    if (!authority.empty() && authority.front() == '[') {
      const auto close = authority.find(']');
      if (close == std::string_view::npos) return std::nullopt;
      ref.host = std::string(authority.substr(0, close + 1));
      authority = authority.substr(close + 1);
      if (!authority.empty()) {
        if (authority.front() != ':') return std::nullopt;
        ref.port = std::string(authority.substr(1));
      }
    } else {
      const auto port_sep = authority.rfind(':');
      if (port_sep != std::string_view::npos) {
        ref.port = std::string(authority.substr(port_sep + 1));
        authority = authority.substr(0, port_sep);
      }
      ref.host = std::string(authority);
    }
    if (!std::all_of(ref.port.begin(), ref.port.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; }) ||
        ref.port.size() > 5) {
      return std::nullopt;
    }
  }
  ref.path = std::string(rest);
  return ref;
}

std::string merge_paths(const std::string& base_path, bool base_has_authority,
                        const std::string& ref_path) {
  if (base_has_authority && base_path.empty()) return "/" + ref_path;
  const auto slash = base_path.rfind('/');
  if (slash == std::string::npos) return ref_path;
  return base_path.substr(0, slash + 1) + ref_path;
}

int default_port(const std::string& scheme) {
  if (scheme == "http") return 80;
  if (scheme == "https") return 443;
  return 0;
}

}  // namespace

struct UrlAccess {
  static Url from(Reference ref) {
    Url url;
    url.scheme_ = std::move(*ref.scheme);
    url.has_authority_ = ref.has_authority;
    url.userinfo_ = std::move(ref.userinfo);
    url.host_ = std::move(ref.host);
    url.port_ = std::move(ref.port);
    url.path_ = std::move(ref.path);
    url.query_ = std::move(ref.query);
    url.fragment_ = std::move(ref.fragment);
    return url;
  }
};

std::string remove_dot_segments(std::string_view path) {
  std::string input(path);
  std::string output;
  while (!input.empty()) {
    if (input.rfind("../", 0) == 0) {
      input.erase(0, 3);
    } else if (input.rfind("./", 0) == 0) {
      input.erase(0, 2);
    } else if (input.rfind("/./", 0) == 0) {
      input.replace(0, 3, "/");
    } else if (input == "/.") {
      input = "/";
    } else if (input.rfind("/../", 0) == 0 || input == "/..") {
      input = input.size() == 3 ? std::string("/") : input.substr(3);
      const auto last = output.rfind('/');
      output.erase(last == std::string::npos ? 0 : last);
    } else if (input == "." || input == "..") {
      input.clear();
    } else {
      const auto next = input.find('/', input[0] == '/' ? 1 : 0);
      output += input.substr(0, next);
      input.erase(0, next == std::string::npos ? input.size() : next);
    }
  }
  return output;
}

std::optional<Url> Url::parse(std::string_view text) {
  auto ref = parse_reference(text);
  if (!ref || !ref->scheme) return std::nullopt;
  if (ref->has_authority && ref->host.empty() &&
      (ref->scheme == "http" || ref->scheme == "https")) {
    return std::nullopt;
  }
  return UrlAccess::from(std::move(*ref));
}

std::optional<Url> Url::resolve(std::string_view reference) const {
  auto ref = parse_reference(reference);
  if (!ref) return std::nullopt;
  Reference target;
  if (ref->scheme) {
    target = std::move(*ref);
    target.path = remove_dot_segments(target.path);
  } else {
    target.scheme = scheme_;
    if (ref->has_authority) {
      target.has_authority = true;
      target.userinfo = std::move(ref->userinfo);
      target.host = std::move(ref->host);
      target.port = std::move(ref->port);
      target.path = remove_dot_segments(ref->path);
      target.query = std::move(ref->query);
    } else {
      target.has_authority = has_authority_;
      target.userinfo = userinfo_;
      target.host = host_;
      target.port = port_;
      if (ref->path.empty()) {
        target.path = path_;
        target.query = ref->query ? std::move(ref->query) : query_;
      } else {
        if (ref->path.front() == '/') {
          target.path = remove_dot_segments(ref->path);
        } else {
          target.path = remove_dot_segments(
              merge_paths(path_, has_authority_, ref->path));
        }
        target.query = std::move(ref->query);
      }
    }
    target.fragment = std::move(ref->fragment);
  }
  if (target.has_authority && target.host.empty() &&
      (*target.scheme == "http" || *target.scheme == "https")) {
    return std::nullopt;
  }
  return UrlAccess::from(std::move(target));
}

Url Url::canonical() const {
  Url out = *this;
  out.scheme_ = lower(out.scheme_);
  out.host_ = lower(out.host_);
  if (!out.port_.empty()) {
    const int explicit_port = std::stoi(out.port_);
    if (explicit_port == default_port(out.scheme_)) out.port_.clear();
  }
  out.path_ = remove_dot_segments(out.path_);
  if (out.path_.empty() && out.has_authority_) out.path_ = "/";
  out.fragment_.reset();
  return out;
}

Url Url::without_fragment() const {
  Url out = *this;
  out.fragment_.reset();
  return out;
}

int Url::port() const noexcept {
  if (!port_.empty()) {
    int value = 0;
    for (const char c : port_) value = value * 10 + (c - '0');
    return value;
  }
  return default_port(scheme_);
}

std::string Url::origin() const {
  std::string out = scheme_ + "://" + host_;
  if (!port_.empty()) out += ":" + port_;
  return out;
}

std::string Url::path_and_query() const {
  std::string out = path_.empty() ? "/" : path_;
  if (query_) out += "?" + *query_;
  return out;
}

std::string Url::str() const {
  std::string out = scheme_ + ":";
  if (has_authority_) {
    out += "//";
    if (!userinfo_.empty()) out += userinfo_ + "@";
    out += host_;
    if (!port_.empty()) out += ":" + port_;
  }
  out += path_;
  if (query_) out += "?" + *query_;
  if (fragment_) out += "#" + *fragment_;
  return out;
}

}  // namespace histoseek
