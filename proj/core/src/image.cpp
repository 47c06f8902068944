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

#include "histoseek/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "histoseek/codec.hpp"
#include "histoseek/error.hpp"

namespace histoseek {
namespace {

void check_dimensions(std::size_t width, std::size_t height,
                      std::size_t pixel_count) {
  if (width == 0 || height == 0) {
    throw InvalidArgument("image", "image dimensions must be positive");
  }
  if (pixel_count != width * height) {
    throw InvalidArgument("image", "pixel count " + std::to_string(pixel_count) +
                                       " does not match " +
                                       std::to_string(width) + "x" +
                                       std::to_string(height));
  }
}

}  // namespace

RgbaImage::RgbaImage(std::size_t width, std::size_t height,
                     std::vector<Rgba> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dimensions(width_, height_, pixels_.size());
}

RgbaImage::RgbaImage(std::size_t width, std::size_t height, Rgba fill)
    : width_(width), height_(height), pixels_(width * height, fill) {
  check_dimensions(width_, height_, pixels_.size());
}

bool RgbaImage::is_opaque() const noexcept {
  return std::all_of(pixels_.begin(), pixels_.end(),
                     [](const Rgba& p) { return p.a == 255; });
}

GrayImage::GrayImage(std::size_t width, std::size_t height,
                     std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dimensions(width_, height_, pixels_.size());
}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::uint8_t fill)
    : width_(width), height_(height), pixels_(width * height, fill) {
  check_dimensions(width_, height_, pixels_.size());
}

Signature::Signature() { p_[0] = 100.0; }

Signature::Signature(const std::array<double, kLevels>& percentages)
    : p_(percentages) {
  double sum = 0.0;
  for (const double v : p_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidArgument("signature", "percentages must be finite and >= 0");
    }
    sum += v;
  }
  if (std::abs(sum - 100.0) > kSumTolerance) {
    throw InvalidArgument("signature", "percentages sum to " +
                                           std::to_string(sum) +
                                           " instead of 100");
  }
}

std::uint8_t luma(const Rgba& px) noexcept {
  // Over white: c' = (c a + 255 (255 - a)) / 255, then
  // Y = (299 R' + 587 G' + 114 B') / 1000. Both divisions are folded into a
  // single exact quotient by 255000.
  const std::uint32_t a = px.a;
  const std::uint32_t weighted = 299u * px.r + 587u * px.g + 114u * px.b;
  const std::uint32_t numer = a * weighted + 255000u * (255u - a);
  return static_cast<std::uint8_t>((numer + 127500u) / 255000u);
}

GrayImage to_gray8(const RgbaImage& image) {
  std::vector<std::uint8_t> out(image.pixels().size());
  std::transform(image.pixels().begin(), image.pixels().end(), out.begin(),
                 [](const Rgba& p) { return luma(p); });
  return GrayImage(image.width(), image.height(), std::move(out));
}

RgbaImage to_rgba(const GrayImage& image) {
  std::vector<Rgba> out(image.pixels().size());
  std::transform(image.pixels().begin(), image.pixels().end(), out.begin(),
                 [](std::uint8_t v) { return Rgba{v, v, v, 255}; });
  return RgbaImage(image.width(), image.height(), std::move(out));
}

Histogram histogram(const GrayImage& image) {
  Histogram h;
  for (const std::uint8_t v : image.pixels()) ++h.counts[v];
  h.tnp = image.pixels().size();
  return h;
}

Signature signature(const Histogram& h) {
  if (h.tnp == 0) {
    throw InvalidArgument("histogram", "histogram has no pixels");
  }
  std::array<double, kLevels> p{};
  const auto tnp = static_cast<double>(h.tnp);
  for (std::size_t i = 0; i < kLevels; ++i) {
    p[i] = static_cast<double>(h.counts[i]) / tnp * 100.0;
  }
  return Signature(Signature::Unchecked{}, p);
}

Signature signature_of_bytes(std::span<const std::uint8_t> bytes) {
  return signature(histogram(to_gray8(decode_image(bytes))));
}

Signature signature_of_bytes(std::string_view bytes) {
  return signature_of_bytes(as_bytes(bytes));
}

double chebyshev_gap(const Signature& a, const Signature& b) noexcept {
  double gap = 0.0;
  for (std::size_t i = 0; i < kLevels; ++i) {
    gap = std::max(gap, std::abs(a[i] - b[i]));
  }
  return gap;
}

double intersection_similarity(const Signature& a,
                               const Signature& b) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < kLevels; ++i) sum += std::min(a[i], b[i]);
  return sum;
}

double l1_distance(const Signature& a, const Signature& b) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < kLevels; ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

namespace {

template <typename Image>
Image upscale_impl(const Image& image, std::size_t factor) {
  if (factor == 0) throw InvalidArgument("factor", "upscale factor must be >= 1");
  Image out(image.width() * factor, image.height() * factor);
  for (std::size_t y = 0; y < out.height(); ++y) {
    for (std::size_t x = 0; x < out.width(); ++x) {
      out.at(x, y) = image.at(x / factor, y / factor);
    }
  }
  return out;
}

}  // namespace

GrayImage upscale_nearest(const GrayImage& image, std::size_t factor) {
  return upscale_impl(image, factor);
}

RgbaImage upscale_nearest(const RgbaImage& image, std::size_t factor) {
  return upscale_impl(image, factor);
}

GrayImage downscale_area(const GrayImage& image, std::size_t factor) {
  if (factor == 0 || image.width() % factor != 0 ||
      image.height() % factor != 0) {
    throw InvalidArgument("factor",
                          "image dimensions must be divisible by the factor");
  }
  const std::size_t area = factor * factor;
  GrayImage out(image.width() / factor, image.height() / factor);
  for (std::size_t y = 0; y < out.height(); ++y) {
    for (std::size_t x = 0; x < out.width(); ++x) {
      std::size_t sum = 0;
      for (std::size_t dy = 0; dy < factor; ++dy) {
        for (std::size_t dx = 0; dx < factor; ++dx) {
          sum += image.at(x * factor + dx, y * factor + dy);
        }
      }
      out.at(x, y) = static_cast<std::uint8_t>((2 * sum + area) / (2 * area));
    }
  }
  return out;
}

}  // namespace histoseek
