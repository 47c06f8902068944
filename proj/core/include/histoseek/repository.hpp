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

#ifndef HISTOSEEK_REPOSITORY_HPP_
#define HISTOSEEK_REPOSITORY_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "histoseek/image.hpp"
#include "histoseek/time.hpp"

namespace histoseek {

// One indexed image as found on one page of one domain.
struct ImageEntry {
  std::string id;
  std::string image_url;
  std::string page_url;
  std::string domain;
  double relevance = 0.0;
  Signature signature;
  Timestamp indexed_at{};

  friend bool operator==(const ImageEntry&, const ImageEntry&) = default;
};

// Stable id of the upsert key (image_url, page_url, domain): 16 lowercase
// hex digits of its 64-bit FNV-1a hash.
std::string entry_id(std::string_view image_url, std::string_view page_url,
                     std::string_view domain);

// Integer relevance bounds of a domain: floor of the smallest and ceiling
// of the largest stored page relevance.
struct DomainBounds {
  std::string domain;
  std::int64_t rel_min = 0;
  std::int64_t rel_max = 0;

  friend bool operator==(const DomainBounds&, const DomainBounds&) = default;
};

// Inclusive relevance interval.
struct RelevanceRange {
  double min = 0.0;
  double max = 0.0;
};

struct CachedImage {
  std::vector<std::uint8_t> bytes;
  std::string mime_type;
};

// Destination for harvested images.
class ImageSink {
 public:
  virtual ~ImageSink() = default;
  // Stores `entry` (upsert) and, when non-empty, the encoded image bytes.
  // Returns the entry id.
  virtual std::string store(const ImageEntry& entry,
                            std::span<const std::uint8_t> image_bytes) = 0;
};

// Single-file SQLite image repository.
//
// One writer and any number of readers may use the same file; every read
// runs in its own transaction and therefore sees a consistent snapshot.
// A Repository object is internally synchronised and may be shared across
// threads.
class Repository : public ImageSink {
 public:
  enum class Mode { kReadOnly, kReadWrite };

  // Opens (creating in kReadWrite mode) the store at `path`; ":memory:"
  // gives a private in-memory store. Throws StorageError.
  explicit Repository(const std::filesystem::path& path, Mode mode = Mode::kReadWrite);
  ~Repository() override;
  Repository(Repository&&) noexcept;
  Repository& operator=(Repository&&) noexcept;

  // Upsert on (image_url, page_url, domain). An empty id is filled in with
  // entry_id(); a zero indexed_at with the current time. Returns the id.
  std::string insert_entry(ImageEntry entry);

  std::string store(const ImageEntry& entry,
                    std::span<const std::uint8_t> image_bytes) override;

  // Attaches encoded image bytes (deduplicated by content hash) to an
  // existing entry, for thumbnails.
  void cache_image(std::string_view id, std::span<const std::uint8_t> bytes);
  std::optional<CachedImage> cached_image(std::string_view id) const;

  // Throws NotFound when the domain has no entries.
  DomainBounds domain_relevance_bounds(std::string_view domain) const;
  // Bounds of every domain with entries, ordered by name.
  std::vector<DomainBounds> all_domain_bounds() const;

  bool has_domain(std::string_view domain) const;

  // Entries of `domain` with range.min <= relevance <= range.max, ordered
  // by id. Throws InvalidArgument when range.min > range.max.
  void scan(std::string_view domain, RelevanceRange range,
            const std::function<void(const ImageEntry&)>& visit) const;
  std::vector<ImageEntry> scan(std::string_view domain, RelevanceRange range) const;

  // Every entry of `domain`, ordered by id.
  std::vector<ImageEntry> scan_domain(std::string_view domain) const;

  std::optional<ImageEntry> find(std::string_view id) const;
  std::vector<ImageEntry> all() const;
  std::size_t count() const;

  // JSON Lines interchange, one entry per line:
  //   {"id", "image_url", "page_url", "domain", "relevance",
  //    "signature": [256 numbers], "indexed_at": RFC 3339}
  // Numbers are written with 17 significant digits, so a round trip is
  // bit exact.
  void export_jsonl(std::ostream& out) const;
  void export_jsonl(const std::filesystem::path& path) const;

  // Upserts every line. The import is all-or-nothing: a malformed line
  // throws FormatError (with its line number) and leaves the store as it
  // was. Returns the number of entries read.
  std::size_t import_jsonl(std::istream& in);
  std::size_t import_jsonl(const std::filesystem::path& path);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One JSON Lines record (no trailing newline) and its inverse.
std::string entry_to_jsonl(const ImageEntry& entry);
// Throws FormatError tagged with `line_number`.
ImageEntry entry_from_jsonl(std::string_view line, std::size_t line_number);

// Formats a double with 17 significant digits.
std::string format_double(double value);

}  // namespace histoseek

#endif  // HISTOSEEK_REPOSITORY_HPP_
