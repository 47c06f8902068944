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

#ifndef HISTOSEEK_SEARCH_HPP_
#define HISTOSEEK_SEARCH_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "histoseek/codec.hpp"
#include "histoseek/fetch.hpp"
#include "histoseek/image.hpp"
#include "histoseek/ontology.hpp"
#include "histoseek/repository.hpp"

namespace histoseek {

enum class MatchMode { kExact, kProbable };

// Chebyshev gap, in percentage points, under which two signatures are the
// same image. Absorbs resampling noise between renditions of one picture.
inline constexpr double kExactEpsilon = 0.01;

std::string_view to_string(MatchMode mode) noexcept;
// "exact" or "probable"; throws InvalidArgument("mode", ...) otherwise.
MatchMode parse_match_mode(std::string_view text);

// Encoded query image, given inline or by URL.
struct QueryImage {
  std::variant<Bytes, std::string> source;

  static QueryImage from_bytes(Bytes bytes) { return {std::move(bytes)}; }
  static QueryImage from_url(std::string url) { return {std::move(url)}; }
};

struct Query {
  QueryImage image;
  MatchMode mode = MatchMode::kExact;
  int tolerance = 0;
  std::string domain;
  // Nullopt selects the whole domain (its floor/ceiling bounds).
  std::optional<RelevanceRange> rel_range;
};

// Enforces the query invariants: exact mode requires tolerance 0, tolerance
// lies in [0, 100], the range is ordered and the domain is named. Throws
// InvalidArgument with the offending field.
void validate(const Query& query);

struct SearchResult {
  ImageEntry entry;
  double similarity = 0.0;  // intersection similarity, [0, 100]
  double gap = 0.0;         // Chebyshev gap, percentage points
  std::size_t rank = 0;     // 1-based
};

// chebyshev_gap(q, r) <= kExactEpsilon.
bool match_exact(const Signature& q, const Signature& r) noexcept;

// match_exact(q, r) or intersection_similarity(q, r) >= 100 - tolerance.
// Throws InvalidArgument when tolerance is outside [0, 100].
bool match_probable(const Signature& q, const Signature& r, int tolerance);

// Filters `candidates` with the mode's predicate and ranks the matches:
// similarity descending, then relevance descending, then image_url, page_url
// and id ascending.
std::vector<SearchResult> rank_matches(const Signature& query, MatchMode mode, int tolerance,
                                       std::vector<ImageEntry> candidates);

// Full query: signature of the query image (fetched with `fetcher` when
// given by URL), candidates from repo.scan(domain, range), then
// rank_matches. A domain is known when `profiles` or the repository names
// it; an unknown domain throws InvalidArgument("domain", ...). Undecodable
// or unfetchable query images throw InvalidArgument("image", ...).
std::vector<SearchResult> execute_search(const Query& query, const Repository& repo,
                                         const ProfileSet& profiles,
                                         Fetcher* fetcher = nullptr);

// Single-line JSON object for a result (no signature):
// {"rank","id","image_url","page_url","domain","relevance","similarity","gap","indexed_at"}.
std::string to_json_line(const SearchResult& result);

}  // namespace histoseek

#endif  // HISTOSEEK_SEARCH_HPP_
