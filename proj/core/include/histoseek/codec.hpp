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

#ifndef HISTOSEEK_CODEC_HPP_
#define HISTOSEEK_CODEC_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "histoseek/image.hpp"

namespace histoseek {

using Bytes = std::vector<std::uint8_t>;

enum class ImageFormat { kUnknown, kPng, kJpeg, kBmp, kGif, kTiff };

// Sniffs the container from its magic bytes.
ImageFormat detect_format(std::span<const std::uint8_t> bytes) noexcept;

std::string_view format_name(ImageFormat format) noexcept;
std::string_view mime_type(ImageFormat format) noexcept;

// Decodes PNG, JPEG, BMP or GIF. GIFs yield their first frame composed on
// the logical screen; pixels the frame does not cover are transparent.
// TIFF is recognised but not decoded.
//
// Throws DecodeError with kind kUnsupportedFormat, kCorruptStream (including
// truncated data) or kEmptyImage.
RgbaImage decode_image(std::span<const std::uint8_t> bytes);
RgbaImage decode_image(std::string_view bytes);

// Lossless 8-bit RGBA (or gray) PNG.
Bytes encode_png(const RgbaImage& image);
Bytes encode_png(const GrayImage& image);

// 24-bit BMP for opaque images, 32-bit with an alpha channel mask
// otherwise. Gray images are written as 8-bit palettized BMP.
Bytes encode_bmp(const RgbaImage& image);
Bytes encode_bmp(const GrayImage& image);

// Baseline JPEG. Alpha is dropped after compositing over white.
Bytes encode_jpeg(const RgbaImage& image, int quality = 90);
Bytes encode_jpeg(const GrayImage& image, int quality = 90);

// GIF89a; several frames produce an animation. Each frame may use at most
// 256 distinct colors (one of them fully transparent), else EncodeError.
// All frames must share the dimensions of the first.
Bytes encode_gif(std::span<const RgbaImage> frames);
Bytes encode_gif(const RgbaImage& image);
Bytes encode_gif(const GrayImage& image);

inline std::span<const std::uint8_t> as_bytes(std::string_view s) noexcept {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace histoseek

#endif  // HISTOSEEK_CODEC_HPP_
