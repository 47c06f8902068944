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

#ifndef HISTOSEEK_IMAGE_HPP_
#define HISTOSEEK_IMAGE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace histoseek {

inline constexpr std::size_t kLevels = 256;

struct Rgba {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  std::uint8_t a = 255;

  friend bool operator==(const Rgba&, const Rgba&) = default;
};

// Decoded color raster, row-major, straight (non-premultiplied) alpha.
class RgbaImage {
 public:
  RgbaImage() = default;
  // Throws InvalidArgument unless width, height > 0 and the pixel count
  // matches.
  RgbaImage(std::size_t width, std::size_t height, std::vector<Rgba> pixels);
  RgbaImage(std::size_t width, std::size_t height, Rgba fill = {});

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::span<const Rgba> pixels() const noexcept { return pixels_; }
  std::span<Rgba> pixels() noexcept { return pixels_; }

  const Rgba& at(std::size_t x, std::size_t y) const {
    return pixels_[y * width_ + x];
  }
  Rgba& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }

  bool is_opaque() const noexcept;

  friend bool operator==(const RgbaImage&, const RgbaImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<Rgba> pixels_;
};

// 8-bit intensity raster, row-major.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(std::size_t width, std::size_t height,
            std::vector<std::uint8_t> pixels);
  GrayImage(std::size_t width, std::size_t height, std::uint8_t fill = 0);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  std::uint8_t at(std::size_t x, std::size_t y) const {
    return pixels_[y * width_ + x];
  }
  std::uint8_t& at(std::size_t x, std::size_t y) {
    return pixels_[y * width_ + x];
  }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Pixel count per intensity level; tnp is the total.
struct Histogram {
  std::array<std::uint64_t, kLevels> counts{};
  std::uint64_t tnp = 0;
};

// Percentage of pixels at each intensity level, P(x_i) = lambda / TNP * 100.
class Signature {
 public:
  // Signature of a single-level image (all mass at level 0).
  Signature();

  // Validates the percentages: finite, >= 0 and summing to 100 within
  // kSumTolerance. Throws InvalidArgument.
  explicit Signature(const std::array<double, kLevels>& percentages);

  static constexpr double kSumTolerance = 1e-6;

  const std::array<double, kLevels>& p() const noexcept { return p_; }
  double operator[](std::size_t level) const { return p_[level]; }

  // Bitwise equality of all 256 percentages.
  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  struct Unchecked {};
  Signature(Unchecked, const std::array<double, kLevels>& p) : p_(p) {}
  friend Signature signature(const Histogram& h);

  std::array<double, kLevels> p_{};
};

// BT.601 luma of one pixel after compositing it over opaque white, rounded
// half-up: Y = 0.299 R + 0.587 G + 0.114 B. Evaluated in exact integer
// arithmetic, so gray inputs (R = G = B, opaque) map to themselves.
std::uint8_t luma(const Rgba& px) noexcept;

GrayImage to_gray8(const RgbaImage& image);

// Inverse embedding used when re-encoding a gray image through a color codec.
RgbaImage to_rgba(const GrayImage& image);

Histogram histogram(const GrayImage& image);

// p[i] = counts[i] / tnp * 100. Throws InvalidArgument when tnp == 0.
Signature signature(const Histogram& h);

// decode_image -> to_gray8 -> histogram -> signature.
Signature signature_of_bytes(std::span<const std::uint8_t> bytes);
Signature signature_of_bytes(std::string_view bytes);

// max_i |a[i] - b[i]|, in percentage points.
double chebyshev_gap(const Signature& a, const Signature& b) noexcept;

// sum_i min(a[i], b[i]); 100 for identical signatures, 0 for disjoint ones.
double intersection_similarity(const Signature& a, const Signature& b) noexcept;

// sum_i |a[i] - b[i]|.
double l1_distance(const Signature& a, const Signature& b) noexcept;

// Each pixel becomes a factor x factor block. Throws InvalidArgument on 0.
GrayImage upscale_nearest(const GrayImage& image, std::size_t factor);
RgbaImage upscale_nearest(const RgbaImage& image, std::size_t factor);

// Box-filter downscale: each output pixel is the rounded (half-up) mean of
// a factor x factor block. Dimensions must be divisible by factor.
GrayImage downscale_area(const GrayImage& image, std::size_t factor);

}  // namespace histoseek

#endif  // HISTOSEEK_IMAGE_HPP_
