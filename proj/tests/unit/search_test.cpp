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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "histoseek/error.hpp"
#include "json.hpp"
#include "test_support.hpp"

namespace histoseek {
namespace {

using testing::make_entry;
using testing::make_signature;

std::string field_of(const std::function<void()>& action) {
  try {
    action();
  } catch (const InvalidArgument& e) {
    return e.field();
  }
  return "<no error>";
}

TEST(MatchMode, ParsesAndPrints) {
  EXPECT_EQ(parse_match_mode("exact"), MatchMode::kExact);
  EXPECT_EQ(parse_match_mode("probable"), MatchMode::kProbable);
  EXPECT_EQ(to_string(MatchMode::kProbable), "probable");
  EXPECT_EQ(field_of([] { parse_match_mode("Exact"); }), "mode");
}

TEST(MatchExact, Examples) {
  const Signature a = make_signature({{3, 40.0}, {200, 60.0}});
  EXPECT_TRUE(match_exact(a, a));
  EXPECT_TRUE(match_exact(a, make_signature({{3, 40.002}, {200, 59.998}})));
  EXPECT_FALSE(match_exact(a, make_signature({{3, 90.0}, {200, 10.0}})));
  EXPECT_TRUE(match_exact(a, make_signature({{3, 40.01}, {200, 59.99}})));
  EXPECT_FALSE(match_exact(a, make_signature({{3, 40.0101}, {200, 59.9899}})));
}

TEST(MatchProbable, Examples) {
  const Signature half = make_signature({{0, 50.0}, {255, 50.0}});
  const Signature black = make_signature({{0, 100.0}});
  const Signature white = make_signature({{255, 100.0}});
  EXPECT_TRUE(match_probable(black, white, 100));
  EXPECT_TRUE(match_probable(half, half, 0));
  EXPECT_FALSE(match_probable(half, black, 49));
  EXPECT_TRUE(match_probable(half, black, 50));
  EXPECT_THROW(match_probable(half, black, -1), InvalidArgument);
  EXPECT_THROW(match_probable(half, black, 101), InvalidArgument);
}

TEST(MatchProbable, ExactMatchesPassEvenAtToleranceZero) {
  const Signature a = make_signature({{3, 40.0}, {200, 60.0}});
  const Signature b = make_signature({{3, 40.005}, {200, 59.995}});
  EXPECT_LT(intersection_similarity(a, b), 100.0);
  EXPECT_TRUE(match_probable(a, b, 0));
}

TEST(QueryValidation, Invariants) {
  Query q;
  q.image = QueryImage::from_bytes(Bytes{1, 2, 3});
  q.domain = "cricket";
  EXPECT_NO_THROW(validate(q));
  q.tolerance = 5;
  EXPECT_EQ(field_of([&] { validate(q); }), "tolerance");
  q.mode = MatchMode::kProbable;
  EXPECT_NO_THROW(validate(q));
  q.tolerance = 101;
  EXPECT_EQ(field_of([&] { validate(q); }), "tolerance");
  q.tolerance = 0;
  q.rel_range = RelevanceRange{5, 4};
  EXPECT_EQ(field_of([&] { validate(q); }), "relevance_range");
  q.rel_range = RelevanceRange{4, 4};
  EXPECT_NO_THROW(validate(q));
  q.domain.clear();
  EXPECT_EQ(field_of([&] { validate(q); }), "domain");
  q.domain = "cricket";
  q.image = QueryImage::from_bytes({});
  EXPECT_EQ(field_of([&] { validate(q); }), "image");
}

TEST(RankMatches, OrdersBySimilarityThenRelevanceThenUrl) {
  const Signature q = make_signature({{0, 50.0}, {255, 50.0}});
  std::vector<ImageEntry> c = {
      make_entry("http://i/b", "http://p/1", "d", 3.0, make_signature({{0, 100.0}})),          // 50
      make_entry("http://i/a", "http://p/1", "d", 3.0, make_signature({{0, 100.0}})),          // 50
      make_entry("http://i/z", "http://p/1", "d", 1.0, q),                                      // 100
      make_entry("http://i/c", "http://p/1", "d", 9.0, make_signature({{0, 100.0}})),          // 50
      make_entry("http://i/y", "http://p/1", "d", 1.0, make_signature({{0, 70.0}, {9, 30.0}})),  // 50
      make_entry("http://i/x", "http://p/1", "d", 1.0, make_signature({{9, 100.0}})),          // 0
      make_entry("http://i/a", "http://p/0", "d", 3.0, make_signature({{0, 100.0}})),          // 50
  };
  const auto results = rank_matches(q, MatchMode::kProbable, 50, c);
  std::vector<std::string> order;
  for (const auto& r : results) order.push_back(r.entry.image_url + " " + r.entry.page_url);
  EXPECT_EQ(order, (std::vector<std::string>{"http://i/z http://p/1", "http://i/c http://p/1",
                                             "http://i/a http://p/0", "http://i/a http://p/1",
                                             "http://i/b http://p/1", "http://i/y http://p/1"}));
  for (std::size_t i = 0; i < results.size(); ++i) EXPECT_EQ(results[i].rank, i + 1);
  EXPECT_EQ(results[0].similarity, 100.0);
  EXPECT_EQ(results[0].gap, 0.0);
  EXPECT_EQ(results[1].gap, 50.0);

  const auto exact = rank_matches(q, MatchMode::kExact, 0, c);
  ASSERT_EQ(exact.size(), 1u);
  EXPECT_EQ(exact[0].entry.image_url, "http://i/z");
  EXPECT_THROW(rank_matches(q, MatchMode::kExact, 3, c), InvalidArgument);
}

class ExecuteSearch : public ::testing::Test {
 protected:
  void SetUp() override {
    profiles_.add(load_domain_profile(testing::cricket_profile_json()));
    std::mt19937_64 rng(8);
    for (int i = 0; i < 6; ++i) {
      images_.push_back(testing::random_image(rng, 24, 24));
      bytes_.push_back(encode_png(images_.back()));
      repo_.store(make_entry("http://img/" + std::to_string(i) + ".png", "http://page/",
                             "cricket", 2.0 + i, signature_of_bytes(bytes_.back())),
                  bytes_.back());
    }
  }

  Query query_for(const Bytes& bytes) {
    Query q;
    q.image = QueryImage::from_bytes(bytes);
    q.domain = "cricket";
    return q;
  }

  ProfileSet profiles_;
  Repository repo_{":memory:"};
  std::vector<RgbaImage> images_;
  std::vector<Bytes> bytes_;
};

TEST_F(ExecuteSearch, SelfMatchRanksFirstWithSimilarityHundred) {
  const auto results = execute_search(query_for(bytes_[3]), repo_, profiles_);
  ASSERT_FALSE(results.empty());
  EXPECT_EQ(results[0].entry.image_url, "http://img/3.png");
  // Sum of min(p, p) is the sum of p, exact up to summation rounding.
  EXPECT_NEAR(results[0].similarity, 100.0, 1e-9);
  EXPECT_EQ(results[0].gap, 0.0);
  EXPECT_EQ(results[0].rank, 1u);
}

TEST_F(ExecuteSearch, ScaledAndGrayVariantsMatchExactly) {
  const RgbaImage& img = images_[2];
  for (const Bytes& variant : {encode_bmp(upscale_nearest(img, 3)), encode_png(to_gray8(img)),
                               encode_png(upscale_nearest(to_gray8(img), 2))}) {
    const auto results = execute_search(query_for(variant), repo_, profiles_);
    ASSERT_FALSE(results.empty());
    EXPECT_EQ(results[0].entry.image_url, "http://img/2.png");
    EXPECT_EQ(results[0].gap, 0.0);
  }
}

TEST_F(ExecuteSearch, KnownDomainWithoutEntriesGivesNoResults) {
  profiles_.add(load_domain_profile(testing::academic_profile_json()));
  Query q = query_for(bytes_[0]);
  q.domain = "academic";
  EXPECT_TRUE(execute_search(q, repo_, profiles_).empty());
}

TEST_F(ExecuteSearch, DomainsKnownOnlyToTheRepositoryAreSearchable) {
  Query q = query_for(bytes_[0]);
  EXPECT_FALSE(execute_search(q, repo_, ProfileSet{}).empty());
}

TEST_F(ExecuteSearch, ErrorsNameTheOffendingField) {
  Query q = query_for(bytes_[0]);
  q.domain = "football";
  EXPECT_EQ(field_of([&] { execute_search(q, repo_, profiles_); }), "domain");
  q = query_for(Bytes{'n', 'o', 'p', 'e'});
  EXPECT_EQ(field_of([&] { execute_search(q, repo_, profiles_); }), "image");
  q = query_for(bytes_[0]);
  q.rel_range = RelevanceRange{3, 2};
  EXPECT_EQ(field_of([&] { execute_search(q, repo_, profiles_); }), "relevance_range");
  q.rel_range.reset();
  q.image = QueryImage::from_url("ftp://x/y.png");
  EXPECT_EQ(field_of([&] { execute_search(q, repo_, profiles_); }), "image");
}

TEST_F(ExecuteSearch, FetchesUrlQueries) {
  testing::MemoryFetcher fetcher;
  fetcher.put("http://q/query.png", "image/png", bytes_[4]);
  fetcher.put("http://q/missing.png", "text/html", "gone", 404);
  Query q;
  q.domain = "cricket";
  q.image = QueryImage::from_url("http://q/query.png");
  const auto results = execute_search(q, repo_, profiles_, &fetcher);
  ASSERT_FALSE(results.empty());
  EXPECT_EQ(results[0].entry.image_url, "http://img/4.png");

  q.image = QueryImage::from_url("http://q/missing.png");
  EXPECT_EQ(field_of([&] { execute_search(q, repo_, profiles_, &fetcher); }), "image");
  q.image = QueryImage::from_url("http://unreachable/x.png");
  EXPECT_EQ(field_of([&] { execute_search(q, repo_, profiles_, &fetcher); }), "image");
  EXPECT_EQ(field_of([&] { execute_search(q, repo_, profiles_, nullptr); }), "image");
}

TEST_F(ExecuteSearch, RangeRestrictsCandidates) {
  Query q = query_for(bytes_[0]);
  q.mode = MatchMode::kProbable;
  q.tolerance = 100;
  q.rel_range = RelevanceRange{3.0, 5.0};
  const auto results = execute_search(q, repo_, profiles_);
  ASSERT_EQ(results.size(), 3u);
  for (const auto& r : results) {
    EXPECT_GE(r.entry.relevance, 3.0);
    EXPECT_LE(r.entry.relevance, 5.0);
  }
}

TEST(ToJsonLine, CarriesResultFieldsWithoutSignature) {
  SearchResult r;
  r.entry = make_entry("http://i/a.png", "http://p/", "cricket", 4.8, Signature{});
  r.entry.id = "0123456789abcdef";
  r.similarity = 97.5;
  r.gap = 1.25;
  r.rank = 2;
  const auto doc = nlohmann::json::parse(to_json_line(r));
  EXPECT_EQ(doc["rank"], 2);
  EXPECT_EQ(doc["id"], "0123456789abcdef");
  EXPECT_EQ(doc["image_url"], "http://i/a.png");
  EXPECT_EQ(doc["page_url"], "http://p/");
  EXPECT_EQ(doc["domain"], "cricket");
  EXPECT_EQ(doc["relevance"], 4.8);
  EXPECT_EQ(doc["similarity"], 97.5);
  EXPECT_EQ(doc["gap"], 1.25);
  EXPECT_EQ(doc["indexed_at"], "2025-10-09T08:53:20Z");
  EXPECT_FALSE(doc.contains("signature"));
  EXPECT_EQ(to_json_line(r).find('\n'), std::string::npos);
}

// ---- properties ------------------------------------------------------------

class SearchProperties : public ::testing::Test {
 protected:
  void SetUp() override {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 60; ++i) {
      // Small images keep signatures coarse so near matches are common.
      const RgbaImage img = testing::random_sized_image(rng, 2, 6);
      sources_.push_back(img);
      repo_.insert_entry(make_entry("http://i/" + std::to_string(i), "http://p/" + std::to_string(i % 7),
                                    "d", static_cast<double>(rng() % 100) / 10.0,
                                    signature(histogram(to_gray8(img)))));
    }
    profiles_.add(DomainProfile("d", 0.0, {}));
    for (int i = 0; i < 15; ++i) {
      queries_.push_back(i % 3 == 0 ? encode_png(upscale_nearest(sources_[rng() % sources_.size()], 2))
                                    : encode_png(testing::random_sized_image(rng, 2, 6)));
    }
  }

  std::vector<std::string> ids(const Bytes& query, MatchMode mode, int t,
                               std::optional<RelevanceRange> range = std::nullopt) {
    Query q;
    q.image = QueryImage::from_bytes(query);
    q.domain = "d";
    q.mode = mode;
    q.tolerance = t;
    q.rel_range = range;
    std::vector<std::string> out;
    for (const auto& r : execute_search(q, repo_, profiles_)) out.push_back(r.entry.id);
    return out;
  }

  static bool subset(std::vector<std::string> a, std::vector<std::string> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  Repository repo_{":memory:"};
  ProfileSet profiles_;
  std::vector<RgbaImage> sources_;
  std::vector<Bytes> queries_;
};

TEST_F(SearchProperties, ToleranceMonotoneAndExactContained) {
  const int levels[] = {0, 1, 5, 10, 25, 50, 100};
  for (const Bytes& query : queries_) {
    const auto exact = ids(query, MatchMode::kExact, 0);
    std::vector<std::string> previous;
    for (int t : levels) {
      const auto current = ids(query, MatchMode::kProbable, t);
      EXPECT_TRUE(subset(previous, current)) << "t=" << t;
      EXPECT_TRUE(subset(exact, current)) << "t=" << t;
      previous = current;
    }
    EXPECT_EQ(previous.size(), repo_.count()) << "tolerance 100 accepts everything";
  }
}

TEST_F(SearchProperties, DeterministicAndRangeSound) {
  std::mt19937_64 rng(78);
  for (const Bytes& query : queries_) {
    const double a = static_cast<double>(rng() % 100) / 10.0;
    const double b = static_cast<double>(rng() % 100) / 10.0;
    const RelevanceRange range{std::min(a, b), std::max(a, b)};
    const auto first = ids(query, MatchMode::kProbable, 30, range);
    EXPECT_EQ(ids(query, MatchMode::kProbable, 30, range), first);
    for (const auto& id : first) {
      const double rel = repo_.find(id)->relevance;
      EXPECT_GE(rel, range.min);
      EXPECT_LE(rel, range.max);
    }
  }
}

}  // namespace
}  // namespace histoseek
