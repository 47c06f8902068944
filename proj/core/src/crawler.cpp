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

#include "histoseek/crawler.hpp"

#include <algorithm>
#include <cctype>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "histoseek/codec.hpp"
#include "histoseek/error.hpp"
#include "histoseek/html.hpp"
#include "histoseek/image.hpp"
#include "histoseek/robots.hpp"
#include "json.hpp"

namespace histoseek {
namespace {

using Clock = std::chrono::steady_clock;

bool is_html(const std::string& content_type) {
  return content_type.empty() || content_type == "text/html" ||
         content_type == "application/xhtml+xml";
}

std::string lower_host(const Url& url) {
  std::string host = url.host();
  std::transform(host.begin(), host.end(), host.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return host;
}

// Serialises requests to one origin and spaces them by the configured
// delay. Also caches the origin's robots.txt rules.
struct HostState {
  std::mutex mu;
  Clock::time_point next_allowed{};
  std::optional<RobotsRules> robots;
};

struct ImageOutcome {
  bool ok = false;
  Signature signature;
  Bytes bytes;
  std::string error;
};

class CrawlRun {
 public:
  CrawlRun(const CrawlConfig& config, const DomainProfile& profile, ImageSink& sink,
           Fetcher& fetcher)
      : config_(config), profile_(profile), sink_(sink), fetcher_(fetcher) {}

  CrawlReport run() {
    for (const auto& seed : config_.seeds) {
      const auto url = Url::parse(seed);
      if (!url || !url->is_http()) {
        report_.errors.push_back({seed, "seed", "not an absolute http(s) URL"});
        continue;
      }
      seed_hosts_.insert(lower_host(*url));
      enqueue(url->canonical(), 0);
    }

    const std::size_t workers = std::max<std::size_t>(1, config_.workers);
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (std::size_t i = 0; i < workers; ++i) pool.emplace_back([this] { worker(); });
      for (auto& t : pool) t.join();
    }
    return std::move(report_);
  }

 private:
  struct Item {
    Url url;
    std::size_t depth;
  };

  // Caller holds mu_ (or runs before workers start).
  void enqueue(const Url& canonical, std::size_t depth) {
    if (visited_.insert(canonical.str()).second) frontier_.push_back({canonical, depth});
  }

  bool has_work() const { return !frontier_.empty() && claimed_ < config_.max_pages; }

  void worker() {
    for (;;) {
      std::unique_lock lock(mu_);
      cv_.wait(lock, [&] { return has_work() || in_flight_ == 0; });
      if (!has_work()) {
        cv_.notify_all();
        return;
      }
      Item item = std::move(frontier_.front());
      frontier_.pop_front();
      ++in_flight_;
      lock.unlock();

      process(item);

      lock.lock();
      --in_flight_;
      lock.unlock();
      cv_.notify_all();
    }
  }

  bool claim_page_slot() {
    std::lock_guard lock(mu_);
    if (claimed_ >= config_.max_pages) return false;
    ++claimed_;
    return true;
  }

  HostState& host_state(const Url& url) {
    std::lock_guard lock(hosts_mu_);
    auto& slot = hosts_[url.origin()];
    if (!slot) slot = std::make_unique<HostState>();
    return *slot;
  }

  // Fetches under the origin's politeness gate. Caller holds host.mu.
  FetchResponse polite_get(HostState& host, const Url& url) {
    const auto now = Clock::now();
    if (host.next_allowed > now) std::this_thread::sleep_for(host.next_allowed - now);
    struct Stamp {
      HostState& h;
      std::chrono::milliseconds delay;
      ~Stamp() { h.next_allowed = Clock::now() + delay; }
    } stamp{host, config_.per_host_delay};
    return fetcher_.get(url);
  }

  bool robots_allow(const Url& url) {
    if (!config_.respect_robots) return true;
    HostState& host = host_state(url);
    std::lock_guard lock(host.mu);
    if (!host.robots) {
      RobotsRules rules;
      try {
        const auto robots_url = Url::parse(url.origin() + "/robots.txt");
        const FetchResponse r = polite_get(host, *robots_url);
        if (r.status >= 200 && r.status < 300) {
          rules = RobotsRules::parse(r.body, config_.user_agent);
        }
      } catch (const FetchError&) {
        // Unreachable robots.txt: no restrictions.
      }
      host.robots = std::move(rules);
    }
    return host.robots->allowed(url.path_and_query());
  }

  FetchResponse fetch(const Url& url) {
    HostState& host = host_state(url);
    std::lock_guard lock(host.mu);
    return polite_get(host, url);
  }

  void record_page(PageRecord page, bool errored, std::optional<CrawlIssue> issue) {
    std::lock_guard lock(mu_);
    ++report_.pages_fetched;
    if (errored) {
      ++report_.pages_errored;
    } else if (page.relevant) {
      ++report_.pages_relevant;
    } else {
      ++report_.pages_irrelevant;
    }
    if (issue) report_.errors.push_back(std::move(*issue));
    report_.pages.push_back(std::move(page));
  }

  void process(const Item& item) {
    if (!robots_allow(item.url)) {
      std::lock_guard lock(mu_);
      ++report_.robots_skipped;
      return;
    }
    if (!claim_page_slot()) return;

    PageRecord page;
    page.url = item.url.str();
    page.depth = item.depth;
    page.fetched_at = now_seconds();

    FetchResponse response;
    try {
      response = fetch(item.url);
    } catch (const FetchError& e) {
      record_page(std::move(page), true, CrawlIssue{item.url.str(), "page", e.what()});
      return;
    }
    if (response.status < 200 || response.status >= 300) {
      record_page(std::move(page), true,
                  CrawlIssue{item.url.str(), "page",
                             "HTTP status " + std::to_string(response.status)});
      return;
    }
    if (!is_html(response.content_type)) {
      page.relevance = page_relevance(count_term_occurrences("", profile_), profile_);
      record_page(std::move(page), false, std::nullopt);
      return;
    }

    const Url base = Url::parse(response.url).value_or(item.url);
    if (!(base.canonical() == item.url)) {
      std::lock_guard lock(mu_);
      visited_.insert(base.canonical().str());
    }
    page.relevance = page_relevance(count_term_occurrences(extract_text(response.body), profile_),
                                    profile_);
    page.relevant = is_domain_relevant(page.relevance, profile_);

    if (item.depth < config_.max_depth) {
      const auto links = extract_links(response.body, base);
      std::lock_guard lock(mu_);
      for (const auto& link : links) {
        const auto target = Url::parse(link);
        if (!target) continue;
        if (config_.same_host_only && seed_hosts_.count(lower_host(*target)) == 0) continue;
        enqueue(target->canonical(), item.depth + 1);
      }
    }

    if (page.relevant) {
      page.image_refs = extract_image_refs(response.body, base);
      for (const auto& image_url : page.image_refs) {
        harvest_image(image_url, base.canonical().str(), page.relevance.value);
      }
    }
    record_page(std::move(page), false, std::nullopt);
  }

  const ImageOutcome& image_outcome(const std::string& image_url) {
    {
      std::lock_guard lock(images_mu_);
      const auto it = images_.find(image_url);
      if (it != images_.end()) return it->second;
    }
    ImageOutcome outcome;
    const auto url = Url::parse(image_url);
    try {
      if (!url) throw FetchError("invalid image URL");
      if (!robots_allow(*url)) throw FetchError("disallowed by robots.txt");
      FetchResponse r = fetch(*url);
      if (r.status < 200 || r.status >= 300) {
        throw FetchError("HTTP status " + std::to_string(r.status));
      }
      outcome.signature = signature_of_bytes(r.body);
      if (config_.cache_images) {
        const auto bytes = as_bytes(r.body);
        outcome.bytes.assign(bytes.begin(), bytes.end());
      }
      outcome.ok = true;
    } catch (const Error& e) {
      outcome.error = e.what();
    }
    std::lock_guard lock(images_mu_);
    return images_.emplace(image_url, std::move(outcome)).first->second;
  }

  void harvest_image(const std::string& image_url, const std::string& page_url,
                     double relevance) {
    const ImageOutcome& outcome = image_outcome(image_url);
    if (!outcome.ok) {
      std::lock_guard lock(mu_);
      ++report_.images_failed;
      report_.errors.push_back({image_url, "image", outcome.error});
      return;
    }
    ImageEntry entry;
    entry.image_url = image_url;
    entry.page_url = page_url;
    entry.domain = profile_.name();
    entry.relevance = relevance;
    entry.signature = outcome.signature;
    entry.indexed_at = now_seconds();
    try {
      std::lock_guard sink_lock(sink_mu_);
      sink_.store(entry, outcome.bytes);
    } catch (const Error& e) {
      std::lock_guard lock(mu_);
      ++report_.images_failed;
      report_.errors.push_back({image_url, "image", std::string("store: ") + e.what()});
      return;
    }
    std::lock_guard lock(mu_);
    ++report_.images_indexed;
  }

  const CrawlConfig& config_;
  const DomainProfile& profile_;
  ImageSink& sink_;
  Fetcher& fetcher_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Item> frontier_;
  std::unordered_set<std::string> visited_;
  std::unordered_set<std::string> seed_hosts_;
  std::size_t in_flight_ = 0;
  std::size_t claimed_ = 0;
  CrawlReport report_;

  std::mutex hosts_mu_;
  std::map<std::string, std::unique_ptr<HostState>> hosts_;

  std::mutex images_mu_;
  std::map<std::string, ImageOutcome> images_;  // node-based: references stay valid

  std::mutex sink_mu_;
};

}  // namespace

void validate(const CrawlConfig& config) {
  if (config.seeds.empty()) throw InvalidArgument("seeds", "at least one seed URL is required");
  for (const auto& seed : config.seeds) {
    const auto url = Url::parse(seed);
    if (!url || !url->is_http() || url->host().empty()) {
      throw InvalidArgument("seeds", "seed \"" + seed + "\" is not an absolute http(s) URL");
    }
  }
  if (config.max_pages < 1) throw InvalidArgument("max_pages", "max_pages must be at least 1");
  if (config.per_host_delay.count() < 0) {
    throw InvalidArgument("per_host_delay", "per_host_delay must not be negative");
  }
  if (config.workers < 1) throw InvalidArgument("workers", "workers must be at least 1");
}

std::vector<std::string> read_seeds_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("seeds", "cannot read seeds file " + path.string());
  std::vector<std::string> seeds;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::string seed = line.substr(first, last - first + 1);
    const auto url = Url::parse(seed);
    if (!url || !url->is_http() || url->host().empty()) {
      throw InvalidArgument("seeds", path.string() + ":" + std::to_string(line_number) +
                                         ": \"" + seed + "\" is not an absolute http(s) URL");
    }
    seeds.push_back(std::move(seed));
  }
  return seeds;
}

CrawlReport crawl(const CrawlConfig& config, const DomainProfile& profile, ImageSink& sink,
                  Fetcher& fetcher) {
  validate(config);
  return CrawlRun(config, profile, sink, fetcher).run();
}

std::string to_json(const CrawlReport& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["pages_fetched"] = report.pages_fetched;
  doc["pages_relevant"] = report.pages_relevant;
  doc["pages_irrelevant"] = report.pages_irrelevant;
  doc["pages_errored"] = report.pages_errored;
  doc["images_indexed"] = report.images_indexed;
  doc["images_failed"] = report.images_failed;
  doc["robots_skipped"] = report.robots_skipped;
  doc["errors"] = ordered_json::array();
  for (const auto& e : report.errors) {
    doc["errors"].push_back({{"url", e.url}, {"stage", e.stage}, {"message", e.message}});
  }
  doc["pages"] = ordered_json::array();
  for (const auto& p : report.pages) {
    ordered_json terms = ordered_json::object();
    for (const auto& [term, score] : p.relevance.per_term) {
      if (score.count > 0) terms[term] = {{"count", score.count}, {"contribution", score.contribution}};
    }
    doc["pages"].push_back({{"url", p.url},
                            {"depth", p.depth},
                            {"relevance", p.relevance.value},
                            {"relevant", p.relevant},
                            {"terms", terms},
                            {"image_refs", p.image_refs},
                            {"fetched_at", format_rfc3339(p.fetched_at)}});
  }
  return doc.dump(2);
}

}  // namespace histoseek
