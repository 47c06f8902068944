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

#ifndef HISTOSEEK_ROBOTS_HPP_
#define HISTOSEEK_ROBOTS_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace histoseek {

// Allow/Disallow rules of the robots.txt group that applies to one user
// agent. Patterns support '*' and a trailing '$'; the longest matching
// pattern decides, Allow winning ties.
class RobotsRules {
 public:
  // Rules that allow everything (missing or unreadable robots.txt).
  RobotsRules() = default;

  static RobotsRules parse(std::string_view robots_txt, std::string_view user_agent);

  bool allowed(std::string_view path_and_query) const;

 private:
  struct Rule {
    std::string pattern;
    bool allow = false;
  };
  std::vector<Rule> rules_;
};

}  // namespace histoseek

#endif  // HISTOSEEK_ROBOTS_HPP_
