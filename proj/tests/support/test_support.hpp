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

#ifndef HISTOSEEK_TESTS_TEST_SUPPORT_HPP_
#define HISTOSEEK_TESTS_TEST_SUPPORT_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "histoseek/codec.hpp"
#include "histoseek/fetch.hpp"
#include "histoseek/image.hpp"
#include "histoseek/repository.hpp"

namespace histoseek::testing {

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write_file(const std::filesystem::path& path, std::string_view content);
void write_file(const std::filesystem::path& path, const Bytes& content);
std::string read_text(const std::filesystem::path& path);

enum class Codec { kPng, kJpeg, kBmp, kGif };
inline constexpr Codec kAllCodecs[] = {Codec::kPng, Codec::kJpeg, Codec::kBmp, Codec::kGif};
const char* codec_name(Codec codec);
// GIF input is first reduced with gif_palette_image().
Bytes encode_as(const RgbaImage& image, Codec codec);

// Six levels per channel and binary alpha, which fits one GIF palette.
RgbaImage gif_palette_image(const RgbaImage& image);

// Photo-like content: a few soft colour blobs over a gradient plus noise.
// Alpha varies only when `with_alpha` is set.
RgbaImage random_image(std::mt19937_64& rng, std::size_t width, std::size_t height,
                       bool with_alpha = false);
// Same, with each dimension drawn uniformly from [min_side, max_side].
RgbaImage random_sized_image(std::mt19937_64& rng, std::size_t min_side, std::size_t max_side,
                       bool with_alpha = false);

// A signature with percentages[bin] = value for each pair, zero elsewhere.
Signature make_signature(std::initializer_list<std::pair<std::size_t, double>> bins);

ImageEntry make_entry(std::string image_url, std::string page_url, std::string domain,
                      double relevance, Signature signature);

// Profile documents used across tests. `cricket` carries the weight table
// and synonym rows used by the examples; `academic` the relevance worked
// example with limit 4.0.
std::string cricket_profile_json(double limit = 1.0);
std::string academic_profile_json(double limit = 4.0);

// In-memory Fetcher. Unknown URLs throw FetchError, like an unreachable host.
class MemoryFetcher : public Fetcher {
 public:
  void put(const std::string& url, std::string content_type, std::string body, int status = 200);
  void put(const std::string& url, std::string content_type, const Bytes& body);
  void redirect(const std::string& from, const std::string& to);

  FetchResponse get(const Url& url) override;

  std::vector<std::string> requests() const;
  std::size_t request_count(const std::string& url) const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, FetchResponse> pages_;
  std::vector<std::string> log_;
};

}  // namespace histoseek::testing

#endif  // HISTOSEEK_TESTS_TEST_SUPPORT_HPP_
