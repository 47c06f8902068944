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

#include "histoseek/search.hpp"

#include <algorithm>
#include <cmath>

#include "histoseek/error.hpp"
#include "json.hpp"

namespace histoseek {

std::string_view to_string(MatchMode mode) noexcept {
  return mode == MatchMode::kExact ? "exact" : "probable";
}

MatchMode parse_match_mode(std::string_view text) {
  if (text == "exact") return MatchMode::kExact;
  if (text == "probable") return MatchMode::kProbable;
  throw InvalidArgument("mode", "mode must be \"exact\" or \"probable\"");
}

void validate(const Query& query) {
  if (query.tolerance < 0 || query.tolerance > 100) {
    throw InvalidArgument("tolerance", "tolerance must be an integer in [0, 100]");
  }
  if (query.mode == MatchMode::kExact && query.tolerance != 0) {
    throw InvalidArgument("tolerance", "exact mode requires tolerance 0");
  }
  if (query.domain.empty()) throw InvalidArgument("domain", "domain is required");
  if (query.rel_range) {
    if (!std::isfinite(query.rel_range->min) || !std::isfinite(query.rel_range->max)) {
      throw InvalidArgument("relevance_range", "relevance range bounds must be finite");
    }
    if (query.rel_range->min > query.rel_range->max) {
      throw InvalidArgument("relevance_range", "relevance range minimum exceeds maximum");
    }
  }
  if (const auto* bytes = std::get_if<Bytes>(&query.image.source); bytes && bytes->empty()) {
    throw InvalidArgument("image", "query image is empty");
  }
  if (const auto* url = std::get_if<std::string>(&query.image.source); url && url->empty()) {
    throw InvalidArgument("image", "query image URL is empty");
  }
}

bool match_exact(const Signature& q, const Signature& r) noexcept {
  return chebyshev_gap(q, r) <= kExactEpsilon;
}

bool match_probable(const Signature& q, const Signature& r, int tolerance) {
  if (tolerance < 0 || tolerance > 100) {
    throw InvalidArgument("tolerance", "tolerance must be an integer in [0, 100]");
  }
  return match_exact(q, r) || intersection_similarity(q, r) >= 100.0 - tolerance;
}

std::vector<SearchResult> rank_matches(const Signature& query, MatchMode mode, int tolerance,
                                       std::vector<ImageEntry> candidates) {
  if (mode == MatchMode::kExact && tolerance != 0) {
    throw InvalidArgument("tolerance", "exact mode requires tolerance 0");
  }
  std::vector<SearchResult> results;
  for (auto& entry : candidates) {
    const bool hit = mode == MatchMode::kExact ? match_exact(query, entry.signature)
                                               : match_probable(query, entry.signature, tolerance);
    if (!hit) continue;
    SearchResult r;
    r.similarity = intersection_similarity(query, entry.signature);
    r.gap = chebyshev_gap(query, entry.signature);
    r.entry = std::move(entry);
    results.push_back(std::move(r));
  }
  std::sort(results.begin(), results.end(), [](const SearchResult& a, const SearchResult& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    if (a.entry.relevance != b.entry.relevance) return a.entry.relevance > b.entry.relevance;
    if (a.entry.image_url != b.entry.image_url) return a.entry.image_url < b.entry.image_url;
    if (a.entry.page_url != b.entry.page_url) return a.entry.page_url < b.entry.page_url;
    return a.entry.id < b.entry.id;
  });
  for (std::size_t i = 0; i < results.size(); ++i) results[i].rank = i + 1;
  return results;
}

namespace {

Signature query_signature(const QueryImage& image, Fetcher* fetcher) {
  Bytes fetched;
  std::span<const std::uint8_t> bytes;
  if (const auto* inline_bytes = std::get_if<Bytes>(&image.source)) {
    bytes = *inline_bytes;
  } else {
    const std::string& text = std::get<std::string>(image.source);
    const auto url = Url::parse(text);
    if (!url || !url->is_http()) {
      throw InvalidArgument("image", "query image URL must be an absolute http(s) URL");
    }
    if (fetcher == nullptr) throw InvalidArgument("image", "fetching query images is disabled");
    try {
      const FetchResponse r = fetcher->get(*url);
      if (r.status < 200 || r.status >= 300) {
        throw FetchError("HTTP status " + std::to_string(r.status));
      }
      const auto view = as_bytes(r.body);
      fetched.assign(view.begin(), view.end());
    } catch (const FetchError& e) {
      throw InvalidArgument("image", std::string("cannot fetch query image: ") + e.what());
    }
    bytes = fetched;
  }
  try {
    return signature_of_bytes(bytes);
  } catch (const DecodeError& e) {
    throw InvalidArgument("image", std::string("cannot decode query image: ") + e.what());
  }
}

}  // namespace

std::vector<SearchResult> execute_search(const Query& query, const Repository& repo,
                                         const ProfileSet& profiles, Fetcher* fetcher) {
  validate(query);
  const bool in_repo = repo.has_domain(query.domain);
  if (!in_repo && profiles.find(query.domain) == nullptr) {
    throw InvalidArgument("domain", "unknown domain \"" + query.domain + "\"");
  }
  const Signature q = query_signature(query.image, fetcher);
  if (!in_repo) return {};
  std::vector<ImageEntry> candidates = query.rel_range
                                           ? repo.scan(query.domain, *query.rel_range)
                                           : repo.scan_domain(query.domain);
  return rank_matches(q, query.mode, query.tolerance, std::move(candidates));
}

std::string to_json_line(const SearchResult& r) {
  nlohmann::ordered_json doc;
  doc["rank"] = r.rank;
  doc["id"] = r.entry.id;
  doc["image_url"] = r.entry.image_url;
  doc["page_url"] = r.entry.page_url;
  doc["domain"] = r.entry.domain;
  doc["relevance"] = r.entry.relevance;
  doc["similarity"] = r.similarity;
  doc["gap"] = r.gap;
  doc["indexed_at"] = format_rfc3339(r.entry.indexed_at);
  return doc.dump();
}

}  // namespace histoseek
