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

#ifndef HISTOSEEK_CRAWLER_HPP_
#define HISTOSEEK_CRAWLER_HPP_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "histoseek/fetch.hpp"
#include "histoseek/ontology.hpp"
#include "histoseek/repository.hpp"
#include "histoseek/time.hpp"

namespace histoseek {

struct CrawlConfig {
  std::vector<std::string> seeds;
  std::size_t max_pages = 100;
  std::size_t max_depth = 3;
  std::chrono::milliseconds per_host_delay{500};
  bool same_host_only = true;
  std::string user_agent = "histoseek/0.1";
  bool respect_robots = true;
  // Fetch workers. 1 gives a deterministic breadth-first crawl.
  std::size_t workers = 1;
  // Keep the encoded image bytes for thumbnails.
  bool cache_images = true;
};

// Throws InvalidArgument naming the offending field.
void validate(const CrawlConfig& config);

// One absolute http(s) URL per line; blank lines and '#' comments are
// skipped. Throws InvalidArgument for anything else.
std::vector<std::string> read_seeds_file(const std::filesystem::path& path);

struct PageRecord {
  std::string url;
  std::size_t depth = 0;
  RelevanceScore relevance;
  bool relevant = false;
  std::vector<std::string> image_refs;
  Timestamp fetched_at{};
};

struct CrawlIssue {
  std::string url;
  std::string stage;  // "page", "image" or "seed"
  std::string message;
};

// pages_fetched == pages_relevant + pages_irrelevant + pages_errored.
struct CrawlReport {
  std::size_t pages_fetched = 0;
  std::size_t pages_relevant = 0;
  std::size_t pages_irrelevant = 0;
  std::size_t pages_errored = 0;
  std::size_t images_indexed = 0;
  std::size_t images_failed = 0;
  std::size_t robots_skipped = 0;
  std::vector<CrawlIssue> errors;
  std::vector<PageRecord> pages;  // in fetch order
};

std::string to_json(const CrawlReport& report);

// Breadth-first crawl from the seeds. Every fetched HTML page is scored
// against `profile`; images are harvested only from pages whose relevance
// strictly exceeds the profile's limit, while links are followed from every
// page. Network and decode failures are recorded in the report and never
// abort the crawl. Stops when the frontier is empty or max_pages pages have
// been fetched.
CrawlReport crawl(const CrawlConfig& config, const DomainProfile& profile,
                  ImageSink& sink, Fetcher& fetcher);

}  // namespace histoseek

#endif  // HISTOSEEK_CRAWLER_HPP_
