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

// Windows bitmap reader and writer. Reads the core (OS/2 1.x), info and
// V4/V5 headers at 1/4/8/16/24/32 bits per pixel, uncompressed or with
// bitfield masks. RLE compression is rejected as unsupported.

#include <array>
#include <bit>
#include <cstdlib>
#include <string>

#include "codec_internal.hpp"

namespace histoseek {
namespace {

constexpr std::uint32_t kBiRgb = 0;
constexpr std::uint32_t kBiBitfields = 3;
constexpr std::uint32_t kBiAlphaBitfields = 6;

struct Channel {
  std::uint32_t mask = 0;
  int shift = 0;
  int bits = 0;

  explicit Channel(std::uint32_t m = 0) : mask(m) {
    if (mask == 0) return;
    shift = std::countr_zero(mask);
    bits = std::popcount(mask >> shift);
  }

  // Scales the masked field to 8 bits.
  std::uint8_t extract(std::uint32_t value) const {
    if (mask == 0) return 0;
    const std::uint32_t v = (value & mask) >> shift;
    const std::uint32_t max = (bits >= 32) ? 0xFFFFFFFFu : ((1u << bits) - 1);
    return static_cast<std::uint8_t>((static_cast<std::uint64_t>(v) * 255 + max / 2) / max);
  }
};

}  // namespace

namespace detail {

RgbaImage decode_bmp(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "bmp");
  r.skip(2);  // "BM"
  r.skip(8);  // file size, reserved
  const std::uint32_t data_offset = r.u32();
  const std::uint32_t header_size = r.u32();

  std::int64_t width = 0;
  std::int64_t height = 0;
  std::uint16_t bpp = 0;
  std::uint32_t compression = kBiRgb;
  std::uint32_t colors_used = 0;
  std::uint32_t masks[4] = {0, 0, 0, 0};
  bool core_header = false;

  if (header_size == 12) {
    core_header = true;
    width = r.u16();
    height = static_cast<std::int16_t>(r.u16());
    r.skip(2);  // planes
    bpp = r.u16();
  } else if (header_size >= 40) {
    width = r.i32();
    height = r.i32();
    r.skip(2);
    bpp = r.u16();
    compression = r.u32();
    r.skip(12);  // image size, resolution
    colors_used = r.u32();
    r.skip(4);   // important colors
    if (header_size >= 52 ||
        compression == kBiBitfields || compression == kBiAlphaBitfields) {
      // Masks follow the 40-byte header either inside a V2+ header or as a
      // separate table.
      masks[0] = r.u32();
      masks[1] = r.u32();
      masks[2] = r.u32();
      if (header_size >= 56 || compression == kBiAlphaBitfields) {
        masks[3] = r.u32();
      }
    }
  } else {
    corrupt("bmp header size " + std::to_string(header_size) + " is invalid");
  }

  if (compression != kBiRgb && compression != kBiBitfields &&
      compression != kBiAlphaBitfields) {
    throw DecodeError(DecodeError::Kind::kUnsupportedFormat,
                      "bmp compression " + std::to_string(compression) +
                          " is not supported");
  }
  const bool top_down = height < 0;
  const std::size_t w = static_cast<std::size_t>(width < 0 ? 0 : width);
  const std::size_t h = static_cast<std::size_t>(std::llabs(height));
  check_decoded_dimensions(w, h, "bmp");

  std::vector<Rgba> palette;
  if (bpp <= 8) {
    if (bpp != 1 && bpp != 4 && bpp != 8) corrupt("bmp bit depth is invalid");
    std::size_t entries = colors_used != 0 ? colors_used : (std::size_t{1} << bpp);
    if (entries > 256) corrupt("bmp palette is too large");
    r.seek(14 + header_size +
           ((compression == kBiBitfields && header_size == 40) ? 12 : 0));
    const std::size_t entry_size = core_header ? 3 : 4;
    palette.resize(std::size_t{1} << bpp, Rgba{0, 0, 0, 255});
    for (std::size_t i = 0; i < entries; ++i) {
      const auto e = r.take(entry_size);
      palette[i] = Rgba{e[2], e[1], e[0], 255};
    }
  } else if (bpp != 16 && bpp != 24 && bpp != 32) {
    corrupt("bmp bit depth " + std::to_string(bpp) + " is invalid");
  }

  const bool use_masks = compression == kBiBitfields ||
                         compression == kBiAlphaBitfields;
  if (!use_masks) {
    if (bpp == 16) {
      masks[0] = 0x7C00;
      masks[1] = 0x03E0;
      masks[2] = 0x001F;
      masks[3] = 0;
    } else if (bpp == 32) {
      masks[0] = 0x00FF0000;
      masks[1] = 0x0000FF00;
      masks[2] = 0x000000FF;
      // Alpha in plain 32-bit BMPs is honoured only when a V4+ header
      // declares it.
      if (header_size < 56) masks[3] = 0;
    }
  }
  const Channel red(masks[0]), green(masks[1]), blue(masks[2]), alpha(masks[3]);

  const std::size_t stride = ((w * bpp + 31) / 32) * 4;
  r.seek(data_offset);
  if (r.remaining() < stride * (h - 1) + (w * bpp + 7) / 8) {
    corrupt("bmp stream is truncated");
  }
  const auto data = r.take(std::min(r.remaining(), stride * h));

  std::vector<Rgba> pixels(w * h);
  for (std::size_t row = 0; row < h; ++row) {
    const std::size_t y = top_down ? row : h - 1 - row;
    const std::uint8_t* src = data.data() + stride * row;
    Rgba* dst = pixels.data() + y * w;
    for (std::size_t x = 0; x < w; ++x) {
      switch (bpp) {
        case 1: dst[x] = palette[(src[x / 8] >> (7 - x % 8)) & 1]; break;
        case 4: dst[x] = palette[(src[x / 2] >> (x % 2 == 0 ? 4 : 0)) & 0xF]; break;
        case 8: dst[x] = palette[src[x]]; break;
        case 24: dst[x] = Rgba{src[3 * x + 2], src[3 * x + 1], src[3 * x], 255}; break;
        case 16:
        case 32: {
          std::uint32_t v = 0;
          if (bpp == 16) {
            v = static_cast<std::uint32_t>(src[2 * x] | (src[2 * x + 1] << 8));
          } else {
            v = static_cast<std::uint32_t>(src[4 * x]) |
                (static_cast<std::uint32_t>(src[4 * x + 1]) << 8) |
                (static_cast<std::uint32_t>(src[4 * x + 2]) << 16) |
                (static_cast<std::uint32_t>(src[4 * x + 3]) << 24);
          }
          dst[x] = Rgba{red.extract(v), green.extract(v), blue.extract(v),
                        alpha.mask != 0 ? alpha.extract(v) : std::uint8_t{255}};
          break;
        }
        default: break;
      }
    }
  }
  return RgbaImage(w, h, std::move(pixels));
}

}  // namespace detail

namespace {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    u16(static_cast<std::uint16_t>(v));
    u16(static_cast<std::uint16_t>(v >> 16));
  }
  void zeros(std::size_t n) { out_.insert(out_.end(), n, 0); }
  Bytes& bytes() { return out_; }

 private:
  Bytes out_;
};

void write_file_header(ByteWriter& w, std::uint32_t header_size,
                       std::uint32_t palette_bytes, std::uint32_t image_bytes) {
  const std::uint32_t offset = 14 + header_size + palette_bytes;
  w.u8('B');
  w.u8('M');
  w.u32(offset + image_bytes);
  w.u32(0);
  w.u32(offset);
}

void write_info_header(ByteWriter& w, std::uint32_t header_size,
                       std::size_t width, std::size_t height, std::uint16_t bpp,
                       std::uint32_t compression, std::uint32_t image_bytes,
                       std::uint32_t colors) {
  w.u32(header_size);
  w.u32(static_cast<std::uint32_t>(width));
  w.u32(static_cast<std::uint32_t>(height));  // bottom-up
  w.u16(1);
  w.u16(bpp);
  w.u32(compression);
  w.u32(image_bytes);
  w.u32(2835);  // 72 dpi
  w.u32(2835);
  w.u32(colors);
  w.u32(0);
}

}  // namespace

Bytes encode_bmp(const RgbaImage& image) {
  const bool with_alpha = !image.is_opaque();
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  const std::uint16_t bpp = with_alpha ? 32 : 24;
  const std::size_t stride = ((w * bpp + 31) / 32) * 4;
  const auto image_bytes = static_cast<std::uint32_t>(stride * h);
  const std::uint32_t header_size = with_alpha ? 108 : 40;

  ByteWriter out;
  write_file_header(out, header_size, 0, image_bytes);
  write_info_header(out, header_size, w, h, bpp,
                    with_alpha ? kBiBitfields : kBiRgb, image_bytes, 0);
  if (with_alpha) {
    out.u32(0x00FF0000);
    out.u32(0x0000FF00);
    out.u32(0x000000FF);
    out.u32(0xFF000000);
    out.u32(0x73524742);  // 'sRGB'
    out.zeros(36 + 12);   // endpoints, gamma
  }
  for (std::size_t row = 0; row < h; ++row) {
    const std::size_t y = h - 1 - row;
    std::size_t written = 0;
    for (std::size_t x = 0; x < w; ++x) {
      const Rgba& p = image.at(x, y);
      out.u8(p.b);
      out.u8(p.g);
      out.u8(p.r);
      written += 3;
      if (with_alpha) {
        out.u8(p.a);
        ++written;
      }
    }
    out.zeros(stride - written);
  }
  return std::move(out.bytes());
}

Bytes encode_bmp(const GrayImage& image) {
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  const std::size_t stride = ((w * 8 + 31) / 32) * 4;
  const auto image_bytes = static_cast<std::uint32_t>(stride * h);

  ByteWriter out;
  write_file_header(out, 40, 256 * 4, image_bytes);
  write_info_header(out, 40, w, h, 8, kBiRgb, image_bytes, 256);
  for (unsigned i = 0; i < 256; ++i) {
    const auto v = static_cast<std::uint8_t>(i);
    out.u8(v);
    out.u8(v);
    out.u8(v);
    out.u8(0);
  }
  for (std::size_t row = 0; row < h; ++row) {
    const std::size_t y = h - 1 - row;
    for (std::size_t x = 0; x < w; ++x) out.u8(image.at(x, y));
    out.zeros(stride - w);
  }
  return std::move(out.bytes());
}

}  // namespace histoseek
