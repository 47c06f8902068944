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

#ifndef HISTOSEEK_CODEC_INTERNAL_HPP_
#define HISTOSEEK_CODEC_INTERNAL_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "histoseek/codec.hpp"
#include "histoseek/error.hpp"

namespace histoseek::detail {

RgbaImage decode_png(std::span<const std::uint8_t> bytes);
RgbaImage decode_jpeg(std::span<const std::uint8_t> bytes);
RgbaImage decode_bmp(std::span<const std::uint8_t> bytes);
RgbaImage decode_gif(std::span<const std::uint8_t> bytes);

// Upper bound on decoded pixels; guards against decompression bombs.
inline constexpr std::size_t kMaxPixels = std::size_t{1} << 28;

[[noreturn]] inline void corrupt(const std::string& what) {
  throw DecodeError(DecodeError::Kind::kCorruptStream, what);
}

inline void check_decoded_dimensions(std::size_t width, std::size_t height,
                                     const char* format) {
  if (width == 0 || height == 0) {
    throw DecodeError(DecodeError::Kind::kEmptyImage,
                      std::string(format) + " image has zero width or height");
  }
  if (width > kMaxPixels / height) {
    corrupt(std::string(format) + " image dimensions are implausibly large");
  }
}

// Little-endian cursor over a byte span; throws kCorruptStream past the end.
class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> data, const char* format)
      : data_(data), format_(format) {}

  std::size_t pos() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return data_.size() - pos_; }
  void seek(std::size_t pos) {
    if (pos > data_.size()) truncated();
    pos_ = pos;
  }
  void skip(std::size_t n) {
    if (n > remaining()) truncated();
    pos_ += n;
  }
  std::uint8_t u8() {
    if (remaining() < 1) truncated();
    return data_[pos_++];
  }
  std::uint16_t u16() {
    const std::uint16_t lo = u8();
    return static_cast<std::uint16_t>(lo | (u8() << 8));
  }
  std::uint32_t u32() {
    const std::uint32_t lo = u16();
    return lo | (static_cast<std::uint32_t>(u16()) << 16);
  }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  std::span<const std::uint8_t> take(std::size_t n) {
    if (n > remaining()) truncated();
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  [[noreturn]] void truncated() const {
    corrupt(std::string(format_) + " stream is truncated");
  }

  std::span<const std::uint8_t> data_;
  const char* format_;
  std::size_t pos_ = 0;
};

}  // namespace histoseek::detail

#endif  // HISTOSEEK_CODEC_INTERNAL_HPP_
