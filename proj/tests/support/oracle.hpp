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

#ifndef HISTOSEEK_TESTS_ORACLE_HPP_
#define HISTOSEEK_TESTS_ORACLE_HPP_

// Brute-force reference search built on OpenCV decoding. It shares no code
// with the library beyond the byte buffers it is handed.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace histoseek::oracle {

using Percentages = std::array<double, 256>;

// Decodes with OpenCV (PNG, JPEG, BMP), composites over white, converts to
// BT.601 luma and returns the 256 percentages.
Percentages percentages_of(const std::vector<std::uint8_t>& encoded);

struct CorpusItem {
  std::string image_url;
  std::string page_url;
  double relevance = 0.0;
  std::vector<std::uint8_t> encoded;
};

struct Hit {
  std::string image_url;
  std::string page_url;
  double similarity = 0.0;
};

// Filters by relevance range and the match predicate, then orders by
// similarity desc, relevance desc, image_url asc, page_url asc.
std::vector<Hit> brute_force_search(const std::vector<std::uint8_t>& query,
                                    const std::vector<CorpusItem>& corpus, bool exact,
                                    int tolerance, double rel_min, double rel_max);

}  // namespace histoseek::oracle

#endif  // HISTOSEEK_TESTS_ORACLE_HPP_
