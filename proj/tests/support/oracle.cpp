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

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace histoseek::oracle {

namespace {

// Y = round_half_up(a/255 * (0.299R + 0.587G + 0.114B) + (1 - a/255) * 255),
// kept in integers: numerator over 255000, doubled to round.
int composite_luma(int r, int g, int b, int a) {
  const long long n = static_cast<long long>(a) * (299 * r + 587 * g + 114 * b) +
                      255000LL * (255 - a);
  return static_cast<int>((2 * n + 255000) / 510000);
}

}  // namespace

Percentages percentages_of(const std::vector<std::uint8_t>& encoded) {
  const cv::Mat raw(1, static_cast<int>(encoded.size()), CV_8UC1,
                    const_cast<std::uint8_t*>(encoded.data()));
  const cv::Mat img = cv::imdecode(raw, cv::IMREAD_UNCHANGED);
  if (img.empty()) throw std::runtime_error("oracle: undecodable image");
  if (img.depth() != CV_8U) throw std::runtime_error("oracle: only 8-bit images");

  std::array<long long, 256> counts{};
  for (int y = 0; y < img.rows; ++y) {
    const std::uint8_t* row = img.ptr<std::uint8_t>(y);
    for (int x = 0; x < img.cols; ++x) {
      int level = 0;
      switch (img.channels()) {
        case 1:
          level = row[x];
          break;
        case 3: {
          const std::uint8_t* p = row + 3 * x;  // BGR
          level = composite_luma(p[2], p[1], p[0], 255);
          break;
        }
        case 4: {
          const std::uint8_t* p = row + 4 * x;  // BGRA
          level = composite_luma(p[2], p[1], p[0], p[3]);
          break;
        }
        default:
          throw std::runtime_error("oracle: unexpected channel count");
      }
      ++counts[static_cast<std::size_t>(level)];
    }
  }
  const double total = static_cast<double>(img.rows) * img.cols;
  Percentages out{};
  for (std::size_t i = 0; i < 256; ++i) out[i] = static_cast<double>(counts[i]) / total * 100.0;
  return out;
}

std::vector<Hit> brute_force_search(const std::vector<std::uint8_t>& query,
                                    const std::vector<CorpusItem>& corpus, bool exact,
                                    int tolerance, double rel_min, double rel_max) {
  const Percentages q = percentages_of(query);
  struct Scored {
    Hit hit;
    double relevance;
  };
  std::vector<Scored> kept;
  for (const CorpusItem& item : corpus) {
    if (item.relevance < rel_min || item.relevance > rel_max) continue;
    const Percentages r = percentages_of(item.encoded);
    double sum_min = 0.0;
    double max_abs = 0.0;
    for (std::size_t i = 0; i < 256; ++i) {
      sum_min += std::min(q[i], r[i]);
      max_abs = std::max(max_abs, std::fabs(q[i] - r[i]));
    }
    const bool same = max_abs <= 0.01;
    const bool accept = exact ? same : (same || sum_min >= 100.0 - tolerance);
    if (accept) kept.push_back({{item.image_url, item.page_url, sum_min}, item.relevance});
  }
  std::sort(kept.begin(), kept.end(), [](const Scored& a, const Scored& b) {
    return std::make_tuple(-a.hit.similarity, -a.relevance, a.hit.image_url, a.hit.page_url) <
           std::make_tuple(-b.hit.similarity, -b.relevance, b.hit.image_url, b.hit.page_url);
  });
  std::vector<Hit> out;
  for (auto& s : kept) out.push_back(std::move(s.hit));
  return out;
}

}  // namespace histoseek::oracle
