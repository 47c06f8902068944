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

#include <png.h>

#include <cstring>
#include <string>

#include "codec_internal.hpp"

namespace histoseek {
namespace detail {

RgbaImage decode_png(std::span<const std::uint8_t> bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()) == 0) {
    corrupt(std::string("png: ") + image.message);
  }
  try {
    check_decoded_dimensions(image.width, image.height, "png");
  } catch (...) {
    png_image_free(&image);
    throw;
  }
  // Untagged 16-bit data is sRGB encoded in practice; libpng would
  // otherwise treat it as linear.
  image.flags |= PNG_IMAGE_FLAG_16BIT_sRGB;
  image.format = PNG_FORMAT_RGBA;
  std::vector<Rgba> pixels(static_cast<std::size_t>(image.width) * image.height);
  static_assert(sizeof(Rgba) == 4);
  if (png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr) == 0) {
    const std::string message = image.message;
    png_image_free(&image);
    corrupt("png: " + message);
  }
  return RgbaImage(image.width, image.height, std::move(pixels));
}

namespace {

Bytes write_png(png_image& image, const void* buffer) {
  png_alloc_size_t size = 0;
  if (png_image_write_to_memory(&image, nullptr, &size, 0, buffer, 0,
                                nullptr) == 0) {
    throw EncodeError(std::string("png: ") + image.message);
  }
  Bytes out(size);
  if (png_image_write_to_memory(&image, out.data(), &size, 0, buffer, 0,
                                nullptr) == 0) {
    throw EncodeError(std::string("png: ") + image.message);
  }
  out.resize(size);
  return out;
}

}  // namespace
}  // namespace detail

Bytes encode_png(const RgbaImage& rgba) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(rgba.width());
  image.height = static_cast<png_uint_32>(rgba.height());
  image.format = PNG_FORMAT_RGBA;
  return detail::write_png(image, rgba.pixels().data());
}

Bytes encode_png(const GrayImage& gray) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(gray.width());
  image.height = static_cast<png_uint_32>(gray.height());
  image.format = PNG_FORMAT_GRAY;
  return detail::write_png(image, gray.pixels().data());
}

}  // namespace histoseek
