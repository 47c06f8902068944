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

#include "histoseek/codec.hpp"

#include <algorithm>
#include <array>

#include "codec_internal.hpp"

namespace histoseek {
namespace {

bool starts_with(std::span<const std::uint8_t> bytes,
                 std::initializer_list<std::uint8_t> magic) {
  return bytes.size() >= magic.size() &&
         std::equal(magic.begin(), magic.end(), bytes.begin());
}

}  // namespace

ImageFormat detect_format(std::span<const std::uint8_t> bytes) noexcept {
  if (starts_with(bytes, {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A})) {
    return ImageFormat::kPng;
  }
  if (starts_with(bytes, {0xFF, 0xD8, 0xFF})) return ImageFormat::kJpeg;
  if (starts_with(bytes, {'B', 'M'})) return ImageFormat::kBmp;
  if (starts_with(bytes, {'G', 'I', 'F', '8', '7', 'a'}) ||
      starts_with(bytes, {'G', 'I', 'F', '8', '9', 'a'})) {
    return ImageFormat::kGif;
  }
  if (starts_with(bytes, {'I', 'I', 42, 0}) ||
      starts_with(bytes, {'M', 'M', 0, 42})) {
    return ImageFormat::kTiff;
  }
  return ImageFormat::kUnknown;
}

std::string_view format_name(ImageFormat format) noexcept {
  switch (format) {
    case ImageFormat::kPng: return "png";
    case ImageFormat::kJpeg: return "jpeg";
    case ImageFormat::kBmp: return "bmp";
    case ImageFormat::kGif: return "gif";
    case ImageFormat::kTiff: return "tiff";
    case ImageFormat::kUnknown: break;
  }
  return "unknown";
}

std::string_view mime_type(ImageFormat format) noexcept {
  switch (format) {
    case ImageFormat::kPng: return "image/png";
    case ImageFormat::kJpeg: return "image/jpeg";
    case ImageFormat::kBmp: return "image/bmp";
    case ImageFormat::kGif: return "image/gif";
    case ImageFormat::kTiff: return "image/tiff";
    case ImageFormat::kUnknown: break;
  }
  return "application/octet-stream";
}

RgbaImage decode_image(std::span<const std::uint8_t> bytes) {
  switch (detect_format(bytes)) {
    case ImageFormat::kPng: return detail::decode_png(bytes);
    case ImageFormat::kJpeg: return detail::decode_jpeg(bytes);
    case ImageFormat::kBmp: return detail::decode_bmp(bytes);
    case ImageFormat::kGif: return detail::decode_gif(bytes);
    case ImageFormat::kTiff:
      throw DecodeError(DecodeError::Kind::kUnsupportedFormat,
                        "TIFF decoding is not enabled in this build");
    case ImageFormat::kUnknown: break;
  }
  throw DecodeError(DecodeError::Kind::kUnsupportedFormat,
                    "unrecognised image format");
}

RgbaImage decode_image(std::string_view bytes) {
  return decode_image(as_bytes(bytes));
}

Bytes encode_gif(const RgbaImage& image) {
  return encode_gif(std::span<const RgbaImage>(&image, 1));
}

Bytes encode_gif(const GrayImage& image) { return encode_gif(to_rgba(image)); }

}  // namespace histoseek
