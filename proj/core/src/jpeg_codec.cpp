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

#include <algorithm>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <string>

// jpeglib.h needs size_t and FILE declared first.
#include <jpeglib.h>
#include <jerror.h>

#include "codec_internal.hpp"

namespace histoseek {
namespace {

struct ErrorManager {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
  bool premature_eof;
};

void on_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<ErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

void on_emit_message(j_common_ptr cinfo, int msg_level) {
  auto* err = reinterpret_cast<ErrorManager*>(cinfo->err);
  if (msg_level < 0 && cinfo->err->msg_code == JWRN_JPEG_EOF) {
    err->premature_eof = true;
  }
}

struct JpegRaster {
  unsigned width = 0;
  unsigned height = 0;
  int components = 0;
  bool cmyk = false;
  std::vector<std::uint8_t> samples;
};

// Returns false with err->message set on failure. Kept free of objects with
// non-trivial destructors so the longjmp out of libjpeg is well defined.
bool read_jpeg(std::span<const std::uint8_t> bytes, JpegRaster* out,
               ErrorManager* err) {
  jpeg_decompress_struct cinfo;
  cinfo.err = jpeg_std_error(&err->pub);
  err->pub.error_exit = on_error_exit;
  err->pub.emit_message = on_emit_message;
  err->premature_eof = false;
  if (setjmp(err->jump)) {
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  if (cinfo.jpeg_color_space == JCS_CMYK || cinfo.jpeg_color_space == JCS_YCCK) {
    cinfo.out_color_space = JCS_CMYK;
    out->cmyk = true;
  } else {
    cinfo.out_color_space = JCS_RGB;
  }
  out->width = cinfo.image_width;
  out->height = cinfo.image_height;
  if (out->width == 0 || out->height == 0 ||
      static_cast<std::size_t>(out->width) >
          detail::kMaxPixels / std::max(1u, out->height)) {
    jpeg_destroy_decompress(&cinfo);
    return true;  // dimensions are rejected by the caller
  }
  jpeg_start_decompress(&cinfo);
  out->components = cinfo.output_components;
  const std::size_t stride =
      static_cast<std::size_t>(cinfo.output_width) * cinfo.output_components;
  out->samples.resize(stride * cinfo.output_height);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out->samples.data() + stride * cinfo.output_scanline;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

struct EncodeTarget {
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
};

bool write_jpeg(const std::uint8_t* samples, std::size_t width,
                std::size_t height, int components, int quality,
                EncodeTarget* target, ErrorManager* err) {
  jpeg_compress_struct cinfo;
  cinfo.err = jpeg_std_error(&err->pub);
  err->pub.error_exit = on_error_exit;
  if (setjmp(err->jump)) {
    jpeg_destroy_compress(&cinfo);
    return false;
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &target->buffer, &target->size);
  cinfo.image_width = static_cast<JDIMENSION>(width);
  cinfo.image_height = static_cast<JDIMENSION>(height);
  cinfo.input_components = components;
  cinfo.in_color_space = components == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  const std::size_t stride = width * static_cast<std::size_t>(components);
  while (cinfo.next_scanline < cinfo.image_height) {
    auto* row = const_cast<JSAMPLE*>(samples + stride * cinfo.next_scanline);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  return true;
}

Bytes encode_samples(const std::vector<std::uint8_t>& samples,
                     std::size_t width, std::size_t height, int components,
                     int quality) {
  if (quality < 1 || quality > 100) {
    throw EncodeError("jpeg quality must be in [1, 100]");
  }
  ErrorManager err{};
  EncodeTarget target;
  const bool ok = write_jpeg(samples.data(), width, height, components, quality,
                             &target, &err);
  Bytes out;
  if (ok) out.assign(target.buffer, target.buffer + target.size);
  std::free(target.buffer);
  if (!ok) throw EncodeError(std::string("jpeg: ") + err.message);
  return out;
}

}  // namespace

namespace detail {

RgbaImage decode_jpeg(std::span<const std::uint8_t> bytes) {
  ErrorManager err{};
  JpegRaster raster;
  if (!read_jpeg(bytes, &raster, &err)) corrupt(std::string("jpeg: ") + err.message);
  check_decoded_dimensions(raster.width, raster.height, "jpeg");
  if (err.premature_eof) corrupt("jpeg stream is truncated");

  std::vector<Rgba> pixels(static_cast<std::size_t>(raster.width) * raster.height);
  const std::uint8_t* s = raster.samples.data();
  for (auto& px : pixels) {
    if (raster.cmyk) {
      // Adobe writes inverted CMYK, so each channel times K gives RGB.
      const unsigned k = s[3];
      px = Rgba{static_cast<std::uint8_t>(s[0] * k / 255),
                static_cast<std::uint8_t>(s[1] * k / 255),
                static_cast<std::uint8_t>(s[2] * k / 255), 255};
      s += 4;
    } else {
      px = Rgba{s[0], s[1], s[2], 255};
      s += 3;
    }
  }
  return RgbaImage(raster.width, raster.height, std::move(pixels));
}

}  // namespace detail

Bytes encode_jpeg(const RgbaImage& image, int quality) {
  std::vector<std::uint8_t> samples;
  samples.reserve(image.pixels().size() * 3);
  for (const Rgba& p : image.pixels()) {
    // Composite over white so transparent regions do not turn black.
    const unsigned a = p.a;
    for (const unsigned c : {p.r, p.g, p.b}) {
      samples.push_back(
          static_cast<std::uint8_t>((c * a + 255 * (255 - a) + 127) / 255));
    }
  }
  return encode_samples(samples, image.width(), image.height(), 3, quality);
}

Bytes encode_jpeg(const GrayImage& image, int quality) {
  const std::vector<std::uint8_t> samples(image.pixels().begin(),
                                          image.pixels().end());
  return encode_samples(samples, image.width(), image.height(), 1, quality);
}

}  // namespace histoseek
