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

#include "histoseek/robots.hpp"

#include <algorithm>
#include <cctype>

namespace histoseek {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Glob match anchored at the start of `path`.
bool pattern_matches(std::string_view pattern, std::string_view path) {
  bool anchored_end = false;
  if (!pattern.empty() && pattern.back() == '$') {
    anchored_end = true;
    pattern.remove_suffix(1);
  }
  // Iterative wildcard matching with backtracking on the last '*'.
  std::size_t p = 0, s = 0, star = std::string_view::npos, mark = 0;
  while (s < path.size()) {
    if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = s;
    } else if (p < pattern.size() && pattern[p] == path[s]) {
      ++p;
      ++s;
    } else if (p == pattern.size() && !anchored_end) {
      return true;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      s = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

}  // namespace

RobotsRules RobotsRules::parse(std::string_view text, std::string_view user_agent) {
  // Product token of our agent, e.g. "histoseek" from "histoseek/0.1".
  std::string token = lower(user_agent.substr(0, user_agent.find_first_of("/ ")));

  std::vector<Rule> specific, wildcard;
  bool have_specific = false;
  bool in_agents = false;      // still reading the group's User-agent lines
  bool group_specific = false;
  bool group_wildcard = false;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    line = trim(line.substr(0, line.find('#')));
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    const std::string key = lower(trim(line.substr(0, colon)));
    const std::string_view value = trim(line.substr(colon + 1));

    if (key == "user-agent") {
      if (!in_agents) {
        group_specific = false;
        group_wildcard = false;
        in_agents = true;
      }
      const std::string agent = lower(value);
      if (agent == "*") {
        group_wildcard = true;
      } else if (!token.empty() && agent.find(token) != std::string::npos) {
        group_specific = true;
        have_specific = true;
      }
      continue;
    }
    if (key != "allow" && key != "disallow") continue;
    in_agents = false;
    if (value.empty()) continue;  // "Disallow:" allows everything
    const Rule rule{std::string(value), key == "allow"};
    if (group_specific) specific.push_back(rule);
    if (group_wildcard) wildcard.push_back(rule);
  }

  RobotsRules out;
  out.rules_ = have_specific ? std::move(specific) : std::move(wildcard);
  return out;
}

bool RobotsRules::allowed(std::string_view path_and_query) const {
  std::size_t best_len = 0;
  bool verdict = true;
  bool matched = false;
  for (const Rule& rule : rules_) {
    if (!pattern_matches(rule.pattern, path_and_query)) continue;
    const std::size_t len = rule.pattern.size();
    if (!matched || len > best_len || (len == best_len && rule.allow)) {
      best_len = len;
      verdict = rule.allow;
      matched = true;
    }
  }
  return verdict;
}

}  // namespace histoseek
