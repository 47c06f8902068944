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

#include "histoseek/repository.hpp"

#include <sqlite3.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

#include "hash.hpp"
#include "histoseek/codec.hpp"
#include "histoseek/error.hpp"
#include "json.hpp"

namespace histoseek {
namespace {

constexpr std::string_view kSchema = R"sql(
CREATE TABLE IF NOT EXISTS entries (
  id          TEXT PRIMARY KEY,
  image_url   TEXT NOT NULL,
  page_url    TEXT NOT NULL,
  domain      TEXT NOT NULL,
  relevance   REAL NOT NULL,
  signature   BLOB NOT NULL,
  indexed_at  INTEGER NOT NULL,
  image_hash  TEXT,
  UNIQUE (image_url, page_url, domain)
);
CREATE INDEX IF NOT EXISTS entries_by_domain ON entries (domain, relevance);
CREATE TABLE IF NOT EXISTS images (
  hash   TEXT PRIMARY KEY,
  mime   TEXT NOT NULL,
  bytes  BLOB NOT NULL
);
)sql";

constexpr std::string_view kEntryColumns =
    "id, image_url, page_url, domain, relevance, signature, indexed_at";

// RAII prepared statement.
class Statement {
 public:
  Statement(sqlite3* db, std::string_view sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql.data(), static_cast<int>(sql.size()), &stmt_,
                           nullptr) != SQLITE_OK) {
      throw StorageError(std::string("sqlite prepare: ") + sqlite3_errmsg(db));
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  void bind(int index, std::string_view text) {
    check(sqlite3_bind_text(stmt_, index, text.data(), static_cast<int>(text.size()),
                            SQLITE_TRANSIENT));
  }
  void bind(int index, double value) { check(sqlite3_bind_double(stmt_, index, value)); }
  void bind(int index, std::int64_t value) { check(sqlite3_bind_int64(stmt_, index, value)); }
  void bind_blob(int index, std::span<const std::uint8_t> bytes) {
    check(sqlite3_bind_blob64(stmt_, index, bytes.data(), bytes.size(), SQLITE_TRANSIENT));
  }

  // True while a row is available.
  bool step() {
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw StorageError(std::string("sqlite step: ") + sqlite3_errmsg(db_));
  }

  std::string text(int col) const {
    const auto* p = sqlite3_column_text(stmt_, col);
    return p == nullptr ? std::string()
                        : std::string(reinterpret_cast<const char*>(p),
                                      static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col)));
  }
  double real(int col) const { return sqlite3_column_double(stmt_, col); }
  std::int64_t integer(int col) const { return sqlite3_column_int64(stmt_, col); }
  bool is_null(int col) const { return sqlite3_column_type(stmt_, col) == SQLITE_NULL; }
  std::span<const std::uint8_t> blob(int col) const {
    const auto* p = static_cast<const std::uint8_t*>(sqlite3_column_blob(stmt_, col));
    return {p, static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col))};
  }

 private:
  void check(int rc) {
    if (rc != SQLITE_OK) throw StorageError(std::string("sqlite bind: ") + sqlite3_errmsg(db_));
  }

  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

void exec(sqlite3* db, std::string_view sql) {
  char* err = nullptr;
  if (sqlite3_exec(db, std::string(sql).c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
    std::string message = err != nullptr ? err : "unknown error";
    sqlite3_free(err);
    throw StorageError("sqlite: " + message);
  }
}

// Signatures are stored as 256 little-endian IEEE-754 doubles.
std::vector<std::uint8_t> pack_signature(const Signature& sig) {
  std::vector<std::uint8_t> out(kLevels * 8);
  for (std::size_t i = 0; i < kLevels; ++i) {
    const auto bits = std::bit_cast<std::uint64_t>(sig[i]);
    for (int b = 0; b < 8; ++b) out[i * 8 + b] = static_cast<std::uint8_t>(bits >> (8 * b));
  }
  return out;
}

Signature unpack_signature(std::span<const std::uint8_t> blob) {
  if (blob.size() != kLevels * 8) throw StorageError("stored signature has the wrong size");
  std::array<double, kLevels> p{};
  for (std::size_t i = 0; i < kLevels; ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(blob[i * 8 + b]) << (8 * b);
    p[i] = std::bit_cast<double>(bits);
  }
  return Signature(p);
}

ImageEntry read_entry(const Statement& s) {
  ImageEntry e;
  e.id = s.text(0);
  e.image_url = s.text(1);
  e.page_url = s.text(2);
  e.domain = s.text(3);
  e.relevance = s.real(4);
  e.signature = unpack_signature(s.blob(5));
  e.indexed_at = Timestamp{std::chrono::seconds{s.integer(6)}};
  return e;
}

std::string content_hash(std::span<const std::uint8_t> bytes) {
  detail::Fnv1a64 h;
  h.update({reinterpret_cast<const char*>(bytes.data()), bytes.size()});
  return h.hex();
}

}  // namespace

std::string entry_id(std::string_view image_url, std::string_view page_url,
                     std::string_view domain) {
  detail::Fnv1a64 h;
  h.update(image_url);
  h.update(std::string_view("\n", 1));
  h.update(page_url);
  h.update(std::string_view("\n", 1));
  h.update(domain);
  return h.hex();
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string entry_to_jsonl(const ImageEntry& e) {
  using nlohmann::json;
  std::string out = "{\"id\":" + json(e.id).dump() +
                    ",\"image_url\":" + json(e.image_url).dump() +
                    ",\"page_url\":" + json(e.page_url).dump() +
                    ",\"domain\":" + json(e.domain).dump() +
                    ",\"relevance\":" + format_double(e.relevance) + ",\"signature\":[";
  for (std::size_t i = 0; i < kLevels; ++i) {
    if (i > 0) out.push_back(',');
    out += format_double(e.signature[i]);
  }
  out += "],\"indexed_at\":\"" + format_rfc3339(e.indexed_at) + "\"}";
  return out;
}

ImageEntry entry_from_jsonl(std::string_view line, std::size_t line_number) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    throw FormatError(line_number, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError(line_number, "record is not an object");

  auto string_field = [&](const char* name) {
    const auto it = doc.find(name);
    if (it == doc.end() || !it->is_string()) {
      throw FormatError(line_number, std::string("\"") + name + "\" must be a string");
    }
    return it->get<std::string>();
  };

  ImageEntry e;
  e.id = string_field("id");
  e.image_url = string_field("image_url");
  e.page_url = string_field("page_url");
  e.domain = string_field("domain");
  if (e.id.empty() || e.image_url.empty() || e.page_url.empty() || e.domain.empty()) {
    throw FormatError(line_number, "id, image_url, page_url and domain must be nonempty");
  }

  const auto rel = doc.find("relevance");
  if (rel == doc.end() || !rel->is_number() || !std::isfinite(rel->get<double>())) {
    throw FormatError(line_number, "\"relevance\" must be a finite number");
  }
  e.relevance = rel->get<double>();

  const auto sig = doc.find("signature");
  if (sig == doc.end() || !sig->is_array()) {
    throw FormatError(line_number, "\"signature\" must be an array");
  }
  if (sig->size() != kLevels) {
    throw FormatError(line_number, "\"signature\" has " + std::to_string(sig->size()) +
                                       " elements, expected 256");
  }
  std::array<double, kLevels> p{};
  for (std::size_t i = 0; i < kLevels; ++i) {
    if (!(*sig)[i].is_number()) {
      throw FormatError(line_number, "signature element " + std::to_string(i) +
                                         " is not a number");
    }
    p[i] = (*sig)[i].get<double>();
  }
  try {
    e.signature = Signature(p);
  } catch (const InvalidArgument& err) {
    throw FormatError(line_number, err.what());
  }

  const auto ts = parse_rfc3339(string_field("indexed_at"));
  if (!ts) throw FormatError(line_number, "\"indexed_at\" is not an RFC 3339 timestamp");
  e.indexed_at = *ts;
  return e;
}

struct Repository::Impl {
  sqlite3* db = nullptr;
  mutable std::mutex mu;

  ~Impl() { sqlite3_close_v2(db); }

  void upsert(const ImageEntry& e) {
    Statement s(db,
                "INSERT INTO entries (id, image_url, page_url, domain, relevance, "
                "signature, indexed_at) VALUES (?1, ?2, ?3, ?4, ?5, ?6, ?7) "
                "ON CONFLICT (image_url, page_url, domain) DO UPDATE SET "
                "id = excluded.id, relevance = excluded.relevance, "
                "signature = excluded.signature, indexed_at = excluded.indexed_at");
    s.bind(1, e.id);
    s.bind(2, e.image_url);
    s.bind(3, e.page_url);
    s.bind(4, e.domain);
    s.bind(5, e.relevance);
    s.bind_blob(6, pack_signature(e.signature));
    s.bind(7, static_cast<std::int64_t>(e.indexed_at.time_since_epoch().count()));
    s.step();
  }

  void attach_image(std::string_view id, std::span<const std::uint8_t> bytes) {
    const std::string hash = content_hash(bytes);
    {
      Statement s(db, "INSERT OR IGNORE INTO images (hash, mime, bytes) VALUES (?1, ?2, ?3)");
      s.bind(1, hash);
      s.bind(2, mime_type(detect_format(bytes)));
      s.bind_blob(3, bytes);
      s.step();
    }
    Statement s(db, "UPDATE entries SET image_hash = ?1 WHERE id = ?2");
    s.bind(1, hash);
    s.bind(2, id);
    s.step();
    if (sqlite3_changes(db) == 0) {
      throw NotFound("no entry with id " + std::string(id));
    }
  }

  static ImageEntry prepare(ImageEntry entry) {
    if (entry.image_url.empty() || entry.page_url.empty() || entry.domain.empty()) {
      throw InvalidArgument("entry", "image_url, page_url and domain must be nonempty");
    }
    if (!std::isfinite(entry.relevance)) {
      throw InvalidArgument("relevance", "relevance must be finite");
    }
    if (entry.id.empty()) entry.id = entry_id(entry.image_url, entry.page_url, entry.domain);
    if (entry.indexed_at == Timestamp{}) entry.indexed_at = now_seconds();
    return entry;
  }
};

Repository::Repository(const std::filesystem::path& path, Mode mode)
    : impl_(std::make_unique<Impl>()) {
  const std::string name = path.string();
  const bool memory = name == ":memory:";
  int flags = SQLITE_OPEN_NOMUTEX;
  flags |= mode == Mode::kReadOnly ? SQLITE_OPEN_READONLY
                                   : (SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE);
  if (sqlite3_open_v2(name.c_str(), &impl_->db, flags, nullptr) != SQLITE_OK) {
    const std::string message = impl_->db != nullptr ? sqlite3_errmsg(impl_->db) : "out of memory";
    throw StorageError("cannot open repository " + name + ": " + message);
  }
  sqlite3_busy_timeout(impl_->db, 5000);
  if (mode == Mode::kReadWrite) {
    if (!memory) exec(impl_->db, "PRAGMA journal_mode=WAL");
    exec(impl_->db, kSchema);
  } else {
    // Fail early on files that are not repositories.
    Statement probe(impl_->db, "SELECT count(*) FROM entries");
    probe.step();
  }
}

Repository::~Repository() = default;
Repository::Repository(Repository&&) noexcept = default;
Repository& Repository::operator=(Repository&&) noexcept = default;

std::string Repository::insert_entry(ImageEntry entry) {
  entry = Impl::prepare(std::move(entry));
  std::lock_guard lock(impl_->mu);
  impl_->upsert(entry);
  return entry.id;
}

std::string Repository::store(const ImageEntry& entry, std::span<const std::uint8_t> image_bytes) {
  const ImageEntry prepared = Impl::prepare(entry);
  std::lock_guard lock(impl_->mu);
  exec(impl_->db, "BEGIN IMMEDIATE");
  try {
    impl_->upsert(prepared);
    if (!image_bytes.empty()) impl_->attach_image(prepared.id, image_bytes);
    exec(impl_->db, "COMMIT");
  } catch (...) {
    exec(impl_->db, "ROLLBACK");
    throw;
  }
  return prepared.id;
}

void Repository::cache_image(std::string_view id, std::span<const std::uint8_t> bytes) {
  std::lock_guard lock(impl_->mu);
  impl_->attach_image(id, bytes);
}

std::optional<CachedImage> Repository::cached_image(std::string_view id) const {
  std::lock_guard lock(impl_->mu);
  Statement s(impl_->db,
              "SELECT images.mime, images.bytes FROM entries "
              "JOIN images ON images.hash = entries.image_hash WHERE entries.id = ?1");
  s.bind(1, id);
  if (!s.step()) return std::nullopt;
  CachedImage out;
  out.mime_type = s.text(0);
  const auto blob = s.blob(1);
  out.bytes.assign(blob.begin(), blob.end());
  return out;
}

DomainBounds Repository::domain_relevance_bounds(std::string_view domain) const {
  std::lock_guard lock(impl_->mu);
  Statement s(impl_->db,
              "SELECT min(relevance), max(relevance), count(*) FROM entries WHERE domain = ?1");
  s.bind(1, domain);
  s.step();
  if (s.integer(2) == 0) {
    throw NotFound("domain \"" + std::string(domain) + "\" has no entries");
  }
  return DomainBounds{std::string(domain), static_cast<std::int64_t>(std::floor(s.real(0))),
                      static_cast<std::int64_t>(std::ceil(s.real(1)))};
}

std::vector<DomainBounds> Repository::all_domain_bounds() const {
  std::lock_guard lock(impl_->mu);
  Statement s(impl_->db,
              "SELECT domain, min(relevance), max(relevance) FROM entries "
              "GROUP BY domain ORDER BY domain");
  std::vector<DomainBounds> out;
  while (s.step()) {
    out.push_back(DomainBounds{s.text(0), static_cast<std::int64_t>(std::floor(s.real(1))),
                               static_cast<std::int64_t>(std::ceil(s.real(2)))});
  }
  return out;
}

bool Repository::has_domain(std::string_view domain) const {
  std::lock_guard lock(impl_->mu);
  Statement s(impl_->db, "SELECT 1 FROM entries WHERE domain = ?1 LIMIT 1");
  s.bind(1, domain);
  return s.step();
}

void Repository::scan(std::string_view domain, RelevanceRange range,
                      const std::function<void(const ImageEntry&)>& visit) const {
  for (const ImageEntry& e : scan(domain, range)) visit(e);
}

std::vector<ImageEntry> Repository::scan(std::string_view domain, RelevanceRange range) const {
  if (std::isnan(range.min) || std::isnan(range.max)) {
    throw InvalidArgument("relevance_range", "relevance range bounds must be numbers");
  }
  if (range.min > range.max) {
    throw InvalidArgument("relevance_range", "relevance range minimum exceeds maximum");
  }
  std::lock_guard lock(impl_->mu);
  Statement s(impl_->db, "SELECT " + std::string(kEntryColumns) +
                             " FROM entries WHERE domain = ?1 AND relevance >= ?2 "
                             "AND relevance <= ?3 ORDER BY id");
  s.bind(1, domain);
  s.bind(2, range.min);
  s.bind(3, range.max);
  std::vector<ImageEntry> out;
  while (s.step()) out.push_back(read_entry(s));
  return out;
}

std::vector<ImageEntry> Repository::scan_domain(std::string_view domain) const {
  std::lock_guard lock(impl_->mu);
  Statement s(impl_->db, "SELECT " + std::string(kEntryColumns) +
                             " FROM entries WHERE domain = ?1 ORDER BY id");
  s.bind(1, domain);
  std::vector<ImageEntry> out;
  while (s.step()) out.push_back(read_entry(s));
  return out;
}

std::optional<ImageEntry> Repository::find(std::string_view id) const {
  std::lock_guard lock(impl_->mu);
  Statement s(impl_->db, "SELECT " + std::string(kEntryColumns) + " FROM entries WHERE id = ?1");
  s.bind(1, id);
  if (!s.step()) return std::nullopt;
  return read_entry(s);
}

std::vector<ImageEntry> Repository::all() const {
  std::lock_guard lock(impl_->mu);
  Statement s(impl_->db, "SELECT " + std::string(kEntryColumns) + " FROM entries ORDER BY id");
  std::vector<ImageEntry> out;
  while (s.step()) out.push_back(read_entry(s));
  return out;
}

std::size_t Repository::count() const {
  std::lock_guard lock(impl_->mu);
  Statement s(impl_->db, "SELECT count(*) FROM entries");
  s.step();
  return static_cast<std::size_t>(s.integer(0));
}

void Repository::export_jsonl(std::ostream& out) const {
  for (const ImageEntry& e : all()) out << entry_to_jsonl(e) << '\n';
  if (!out) throw StorageError("failed writing JSON Lines export");
}

void Repository::export_jsonl(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StorageError("cannot write " + path.string());
  export_jsonl(out);
  out.flush();
  if (!out) throw StorageError("failed writing " + path.string());
}

std::size_t Repository::import_jsonl(std::istream& in) {
  std::vector<ImageEntry> entries;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    entries.push_back(entry_from_jsonl(line, line_number));
  }
  if (in.bad()) throw StorageError("failed reading JSON Lines input");

  std::lock_guard lock(impl_->mu);
  exec(impl_->db, "BEGIN IMMEDIATE");
  try {
    for (const ImageEntry& e : entries) impl_->upsert(e);
    exec(impl_->db, "COMMIT");
  } catch (...) {
    exec(impl_->db, "ROLLBACK");
    throw;
  }
  return entries.size();
}

std::size_t Repository::import_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot read " + path.string());
  return import_jsonl(in);
}

}  // namespace histoseek
