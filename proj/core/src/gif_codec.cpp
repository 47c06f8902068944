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

// GIF87a/89a reader (first frame only) and GIF89a writer with a local
// color table per frame.

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <unordered_map>

#include "codec_internal.hpp"

namespace histoseek {
namespace {

constexpr int kMaxCodeBits = 12;
constexpr int kMaxCodes = 1 << kMaxCodeBits;

std::vector<Rgba> read_color_table(detail::ByteReader& r, std::uint8_t packed) {
  const std::size_t entries = std::size_t{2} << (packed & 0x07);
  const auto raw = r.take(entries * 3);
  std::vector<Rgba> table(entries);
  for (std::size_t i = 0; i < entries; ++i) {
    table[i] = Rgba{raw[3 * i], raw[3 * i + 1], raw[3 * i + 2], 255};
  }
  return table;
}

std::vector<std::uint8_t> read_sub_blocks(detail::ByteReader& r) {
  std::vector<std::uint8_t> data;
  for (;;) {
    const std::uint8_t size = r.u8();
    if (size == 0) break;
    const auto block = r.take(size);
    data.insert(data.end(), block.begin(), block.end());
  }
  return data;
}

void skip_sub_blocks(detail::ByteReader& r) {
  for (;;) {
    const std::uint8_t size = r.u8();
    if (size == 0) break;
    r.skip(size);
  }
}

// Decodes exactly `count` color indices from an LZW code stream.
std::vector<std::uint8_t> lzw_decode(const std::vector<std::uint8_t>& data,
                                     int min_code_size, std::size_t count) {
  if (min_code_size < 2 || min_code_size > 8) {
    detail::corrupt("gif LZW minimum code size is invalid");
  }
  const int clear = 1 << min_code_size;
  const int eoi = clear + 1;

  std::array<std::uint16_t, kMaxCodes> prefix{};
  std::array<std::uint8_t, kMaxCodes> suffix{};
  std::array<std::uint8_t, kMaxCodes> first{};
  for (int i = 0; i < clear; ++i) {
    suffix[i] = static_cast<std::uint8_t>(i);
    first[i] = static_cast<std::uint8_t>(i);
  }

  std::vector<std::uint8_t> out;
  out.reserve(count);
  std::vector<std::uint8_t> stack;
  stack.reserve(kMaxCodes);

  int code_size = min_code_size + 1;
  int next = clear + 2;
  int prev = -1;
  std::size_t bit_pos = 0;
  const std::size_t total_bits = data.size() * 8;

  auto emit = [&](int code) {
    stack.clear();
    while (code >= clear) {
      stack.push_back(suffix[code]);
      code = prefix[code];
    }
    stack.push_back(static_cast<std::uint8_t>(code));
    for (auto it = stack.rbegin(); it != stack.rend() && out.size() < count; ++it) {
      out.push_back(*it);
    }
  };

  while (out.size() < count) {
    if (bit_pos + static_cast<std::size_t>(code_size) > total_bits) {
      detail::corrupt("gif image data is truncated");
    }
    int code = 0;
    for (int b = 0; b < code_size; ++b, ++bit_pos) {
      code |= ((data[bit_pos / 8] >> (bit_pos % 8)) & 1) << b;
    }
    if (code == clear) {
      code_size = min_code_size + 1;
      next = clear + 2;
      prev = -1;
      continue;
    }
    if (code == eoi) break;
    if (prev < 0) {
      if (code >= clear) detail::corrupt("gif LZW stream starts with an invalid code");
      emit(code);
      prev = code;
      continue;
    }
    if (code > next) detail::corrupt("gif LZW code is out of range");
    // code == next is the KwKwK case: the string is prev's string plus its
    // own first byte, so it can only be expanded after the entry is added.
    const bool pending = code == next;
    if (!pending) emit(code);
    if (next < kMaxCodes) {
      prefix[next] = static_cast<std::uint16_t>(prev);
      suffix[next] = pending ? first[prev] : first[code];
      first[next] = first[prev];
      ++next;
      if (next == (1 << code_size) && code_size < kMaxCodeBits) ++code_size;
    }
    if (pending) emit(code);
    prev = code;
  }
  if (out.size() < count) detail::corrupt("gif image data ends early");
  return out;
}

}  // namespace

namespace detail {

RgbaImage decode_gif(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "gif");
  r.skip(6);
  const std::size_t screen_w = r.u16();
  const std::size_t screen_h = r.u16();
  const std::uint8_t screen_packed = r.u8();
  r.skip(2);  // background index, aspect ratio
  std::vector<Rgba> global_table;
  if (screen_packed & 0x80) global_table = read_color_table(r, screen_packed);

  int transparent = -1;
  for (;;) {
    const std::uint8_t block = r.u8();
    if (block == 0x3B) corrupt("gif contains no image");
    if (block == 0x21) {
      const std::uint8_t label = r.u8();
      if (label == 0xF9) {
        const std::uint8_t size = r.u8();
        if (size < 4) corrupt("gif graphic control extension is malformed");
        const std::uint8_t packed = r.u8();
        r.skip(2);  // delay
        const std::uint8_t index = r.u8();
        transparent = (packed & 0x01) ? index : -1;
        r.skip(size - 4u);
      }
      skip_sub_blocks(r);
      continue;
    }
    if (block != 0x2C) corrupt("gif block type is invalid");

    const std::size_t left = r.u16();
    const std::size_t top = r.u16();
    const std::size_t frame_w = r.u16();
    const std::size_t frame_h = r.u16();
    const std::uint8_t packed = r.u8();
    std::vector<Rgba> table = (packed & 0x80) ? read_color_table(r, packed)
                                              : global_table;
    if (table.empty()) corrupt("gif frame has no color table");
    check_decoded_dimensions(frame_w, frame_h, "gif");
    check_decoded_dimensions(screen_w, screen_h, "gif");

    const int min_code_size = r.u8();
    const std::vector<std::uint8_t> data = read_sub_blocks(r);
    const std::vector<std::uint8_t> indices =
        lzw_decode(data, min_code_size, frame_w * frame_h);

    std::vector<std::size_t> row_order;
    row_order.reserve(frame_h);
    if (packed & 0x40) {
      for (const auto& [start, step] : {std::pair<std::size_t, std::size_t>{0, 8},
                                        {4, 8}, {2, 4}, {1, 2}}) {
        for (std::size_t y = start; y < frame_h; y += step) row_order.push_back(y);
      }
    } else {
      for (std::size_t y = 0; y < frame_h; ++y) row_order.push_back(y);
    }

    RgbaImage canvas(screen_w, screen_h, Rgba{0, 0, 0, 0});
    for (std::size_t i = 0; i < frame_h; ++i) {
      const std::size_t y = top + row_order[i];
      if (y >= screen_h) continue;
      for (std::size_t x = 0; x < frame_w; ++x) {
        const std::size_t cx = left + x;
        if (cx >= screen_w) break;
        const std::uint8_t index = indices[i * frame_w + x];
        if (index == transparent) continue;
        if (index >= table.size()) continue;  // out-of-table indices render as background
        canvas.at(cx, y) = table[index];
      }
    }
    return canvas;
  }
}

}  // namespace detail

namespace {

class BitPacker {
 public:
  void write(int code, int bits) {
    buffer_ |= static_cast<std::uint32_t>(code) << count_;
    count_ += bits;
    while (count_ >= 8) {
      bytes_.push_back(static_cast<std::uint8_t>(buffer_));
      buffer_ >>= 8;
      count_ -= 8;
    }
  }
  std::vector<std::uint8_t> finish() {
    if (count_ > 0) bytes_.push_back(static_cast<std::uint8_t>(buffer_));
    buffer_ = 0;
    count_ = 0;
    return std::move(bytes_);
  }

 private:
  std::uint32_t buffer_ = 0;
  int count_ = 0;
  std::vector<std::uint8_t> bytes_;
};

std::vector<std::uint8_t> lzw_encode(const std::vector<std::uint8_t>& indices,
                                     int min_code_size) {
  const int clear = 1 << min_code_size;
  const int eoi = clear + 1;
  int code_size = min_code_size + 1;
  int next = clear + 2;
  std::unordered_map<std::uint32_t, int> dict;
  BitPacker out;

  // Must mirror the decoder: the width grows once the table fills the
  // current code space.
  auto emit = [&](int code) {
    out.write(code, code_size);
    if (next >= (1 << code_size) && code_size < kMaxCodeBits) ++code_size;
  };

  out.write(clear, code_size);
  int prefix = indices.front();
  for (std::size_t i = 1; i < indices.size(); ++i) {
    const std::uint8_t k = indices[i];
    const std::uint32_t key = (static_cast<std::uint32_t>(prefix) << 8) | k;
    const auto it = dict.find(key);
    if (it != dict.end()) {
      prefix = it->second;
      continue;
    }
    emit(prefix);
    if (next < kMaxCodes) {
      dict.emplace(key, next++);
    } else {
      out.write(clear, code_size);
      dict.clear();
      code_size = min_code_size + 1;
      next = clear + 2;
    }
    prefix = k;
  }
  emit(prefix);
  out.write(eoi, code_size);
  return out.finish();
}

void put16(Bytes& out, std::size_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
}

struct IndexedFrame {
  std::vector<Rgba> palette;
  std::vector<std::uint8_t> indices;
  int transparent = -1;
};

IndexedFrame index_frame(const RgbaImage& image) {
  IndexedFrame frame;
  std::map<std::uint32_t, std::uint8_t> lookup;
  frame.indices.reserve(image.pixels().size());
  for (const Rgba& p : image.pixels()) {
    if (p.a != 0 && p.a != 255) {
      throw EncodeError("gif supports only fully opaque or fully transparent pixels");
    }
    const std::uint32_t key =
        p.a == 0 ? 0xFFFFFFFFu
                 : (static_cast<std::uint32_t>(p.r) << 16) |
                       (static_cast<std::uint32_t>(p.g) << 8) | p.b;
    auto it = lookup.find(key);
    if (it == lookup.end()) {
      if (frame.palette.size() == 256) {
        throw EncodeError("gif frame has more than 256 distinct colors");
      }
      const auto index = static_cast<std::uint8_t>(frame.palette.size());
      if (p.a == 0) frame.transparent = index;
      frame.palette.push_back(p.a == 0 ? Rgba{0, 0, 0, 0} : p);
      it = lookup.emplace(key, index).first;
    }
    frame.indices.push_back(it->second);
  }
  return frame;
}

}  // namespace

Bytes encode_gif(std::span<const RgbaImage> frames) {
  if (frames.empty()) throw EncodeError("gif needs at least one frame");
  const std::size_t w = frames.front().width();
  const std::size_t h = frames.front().height();
  if (w > 0xFFFF || h > 0xFFFF) throw EncodeError("gif dimensions exceed 65535");

  Bytes out = {'G', 'I', 'F', '8', '9', 'a'};
  put16(out, w);
  put16(out, h);
  out.push_back(0x00);  // no global color table
  out.push_back(0);
  out.push_back(0);
  if (frames.size() > 1) {
    const std::uint8_t loop[] = {0x21, 0xFF, 0x0B, 'N', 'E', 'T', 'S', 'C', 'A',
                                 'P', 'E', '2', '.', '0', 0x03, 0x01, 0x00, 0x00,
                                 0x00};
    out.insert(out.end(), std::begin(loop), std::end(loop));
  }

  for (const RgbaImage& image : frames) {
    if (image.width() != w || image.height() != h) {
      throw EncodeError("gif frames must share the first frame's dimensions");
    }
    const IndexedFrame frame = index_frame(image);
    int table_bits = 1;
    while ((std::size_t{1} << table_bits) < frame.palette.size()) ++table_bits;

    // Graphic control extension: disposal "do not dispose", 100 ms delay.
    out.insert(out.end(), {0x21, 0xF9, 0x04});
    out.push_back(static_cast<std::uint8_t>(0x04 | (frame.transparent >= 0 ? 1 : 0)));
    put16(out, 10);
    out.push_back(static_cast<std::uint8_t>(frame.transparent >= 0 ? frame.transparent : 0));
    out.push_back(0x00);

    out.push_back(0x2C);
    put16(out, 0);
    put16(out, 0);
    put16(out, w);
    put16(out, h);
    out.push_back(static_cast<std::uint8_t>(0x80 | (table_bits - 1)));
    for (std::size_t i = 0; i < (std::size_t{1} << table_bits); ++i) {
      const Rgba c = i < frame.palette.size() ? frame.palette[i] : Rgba{0, 0, 0, 0};
      out.insert(out.end(), {c.r, c.g, c.b});
    }
    const int min_code_size = std::max(2, table_bits);
    out.push_back(static_cast<std::uint8_t>(min_code_size));
    const std::vector<std::uint8_t> data = lzw_encode(frame.indices, min_code_size);
    for (std::size_t pos = 0; pos < data.size(); pos += 255) {
      const std::size_t n = std::min<std::size_t>(255, data.size() - pos);
      out.push_back(static_cast<std::uint8_t>(n));
      out.insert(out.end(), data.begin() + static_cast<std::ptrdiff_t>(pos),
                 data.begin() + static_cast<std::ptrdiff_t>(pos + n));
    }
    out.push_back(0x00);
  }
  out.push_back(0x3B);
  return out;
}

}  // namespace histoseek
