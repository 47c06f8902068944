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

#include <gtest/gtest.h>

#include <random>

#include "histoseek/error.hpp"
#include "test_support.hpp"

namespace histoseek {
namespace {

using testing::Codec;

DecodeError::Kind decode_failure(const Bytes& bytes) {
  try {
    decode_image(bytes);
  } catch (const DecodeError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "decode unexpectedly succeeded";
  return DecodeError::Kind::kEmptyImage;
}

TEST(DetectFormat, RecognisesMagicNumbers) {
  const RgbaImage img(2, 2, Rgba{1, 2, 3, 255});
  EXPECT_EQ(detect_format(encode_png(img)), ImageFormat::kPng);
  EXPECT_EQ(detect_format(encode_jpeg(img)), ImageFormat::kJpeg);
  EXPECT_EQ(detect_format(encode_bmp(img)), ImageFormat::kBmp);
  EXPECT_EQ(detect_format(encode_gif(img)), ImageFormat::kGif);
  EXPECT_EQ(detect_format(as_bytes(std::string_view("II*\0xxxx", 8))), ImageFormat::kTiff);
  EXPECT_EQ(detect_format(as_bytes(std::string_view("MM\0*xxxx", 8))), ImageFormat::kTiff);
  EXPECT_EQ(detect_format(as_bytes("<html>")), ImageFormat::kUnknown);
  EXPECT_EQ(detect_format({}), ImageFormat::kUnknown);
  EXPECT_EQ(mime_type(ImageFormat::kPng), "image/png");
  EXPECT_EQ(format_name(ImageFormat::kGif), "gif");
}

TEST(DecodeImage, OneWhitePixelPng) {
  const RgbaImage decoded = decode_image(encode_png(RgbaImage(1, 1, Rgba{255, 255, 255, 255})));
  ASSERT_EQ(decoded.width(), 1u);
  ASSERT_EQ(decoded.height(), 1u);
  EXPECT_EQ(decoded.at(0, 0), (Rgba{255, 255, 255, 255}));
}

TEST(DecodeImage, TruncatedJpegIsACorruptStream) {
  std::mt19937_64 rng(11);
  Bytes jpeg = encode_jpeg(testing::random_image(rng, 64, 48));
  jpeg.resize(jpeg.size() / 2);
  EXPECT_EQ(decode_failure(jpeg), DecodeError::Kind::kCorruptStream);
}

TEST(DecodeImage, TwoFrameGifYieldsTheFirstFrame) {
  RgbaImage first(3, 2, Rgba{255, 0, 0, 255});
  first.at(1, 1) = Rgba{0, 0, 255, 255};
  const RgbaImage second(3, 2, Rgba{0, 255, 0, 255});
  const std::vector<RgbaImage> frames = {first, second};
  EXPECT_EQ(decode_image(encode_gif(frames)), first);
}

TEST(DecodeImage, MinimalTransparentGifFromTheWild) {
  // The canonical 43-byte 1x1 transparent GIF used as a web beacon.
  const Bytes gif = {0x47, 0x49, 0x46, 0x38, 0x39, 0x61, 0x01, 0x00, 0x01, 0x00, 0x80,
                     0x00, 0x00, 0xFF, 0xFF, 0xFF, 0x00, 0x00, 0x00, 0x21, 0xF9, 0x04,
                     0x01, 0x00, 0x00, 0x00, 0x00, 0x2C, 0x00, 0x00, 0x00, 0x00, 0x01,
                     0x00, 0x01, 0x00, 0x00, 0x02, 0x02, 0x44, 0x01, 0x00, 0x3B};
  const RgbaImage img = decode_image(gif);
  ASSERT_EQ(img.width(), 1u);
  EXPECT_EQ(img.at(0, 0).a, 0);
  EXPECT_EQ(luma(img.at(0, 0)), 255);
}

TEST(DecodeImage, UnsupportedAndEmptyInputs) {
  EXPECT_EQ(decode_failure({}), DecodeError::Kind::kUnsupportedFormat);
  EXPECT_EQ(decode_failure(Bytes{'h', 'e', 'l', 'l', 'o'}), DecodeError::Kind::kUnsupportedFormat);
  const Bytes tiff = {'I', 'I', 42, 0, 8, 0, 0, 0, 0, 0};
  EXPECT_EQ(decode_failure(tiff), DecodeError::Kind::kUnsupportedFormat);
}

TEST(DecodeImage, ZeroDimensionHeadersAreRejected) {
  Bytes gif = encode_gif(RgbaImage(2, 2, Rgba{9, 9, 9, 255}));
  gif[6] = 0;  // logical screen width
  gif[7] = 0;
  EXPECT_THROW(decode_image(gif), DecodeError);

  Bytes bmp = encode_bmp(RgbaImage(2, 2, Rgba{9, 9, 9, 255}));
  bmp[18] = bmp[19] = bmp[20] = bmp[21] = 0;  // biWidth
  EXPECT_THROW(decode_image(bmp), DecodeError);
}

class LosslessRoundTrip : public ::testing::TestWithParam<Codec> {};

TEST_P(LosslessRoundTrip, PixelsSurviveEncodeDecode) {
  std::mt19937_64 rng(static_cast<unsigned>(GetParam()) + 100);
  for (int trial = 0; trial < 12; ++trial) {
    const bool alpha = GetParam() != Codec::kBmp || trial % 2 == 0;
    RgbaImage img = testing::random_sized_image(rng, 1, 70, alpha);
    if (GetParam() == Codec::kGif) img = testing::gif_palette_image(img);
    const RgbaImage decoded = decode_image(testing::encode_as(img, GetParam()));
    ASSERT_EQ(decoded.width(), img.width());
    ASSERT_EQ(decoded.height(), img.height());
    for (std::size_t i = 0; i < img.pixels().size(); ++i) {
      const Rgba want = img.pixels()[i];
      const Rgba got = decoded.pixels()[i];
      if (want.a == 0) {
        ASSERT_EQ(got.a, 0) << i;  // colour of invisible pixels is irrelevant
      } else {
        ASSERT_EQ(got, want) << codec_name(GetParam()) << " pixel " << i;
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Codecs, LosslessRoundTrip,
                         ::testing::Values(Codec::kPng, Codec::kBmp, Codec::kGif),
                         [](const auto& info) { return testing::codec_name(info.param); });

TEST(GrayEncoders, ProduceTheSameLevels) {
  GrayImage g(17, 5);
  for (std::size_t i = 0; i < g.pixels().size(); ++i) {
    g.pixels()[i] = static_cast<std::uint8_t>(i * 3);
  }
  EXPECT_EQ(to_gray8(decode_image(encode_png(g))), g);
  EXPECT_EQ(to_gray8(decode_image(encode_bmp(g))), g);
  EXPECT_EQ(to_gray8(decode_image(encode_gif(g))), g);
  const GrayImage flat(8, 8, 77);
  EXPECT_EQ(to_gray8(decode_image(encode_jpeg(flat))), flat);
}

TEST(Jpeg, RoundTripIsClose) {
  std::mt19937_64 rng(17);
  const RgbaImage img = testing::random_image(rng, 64, 64);
  const RgbaImage decoded = decode_image(encode_jpeg(img, 95));
  ASSERT_EQ(decoded.width(), 64u);
  double err = 0.0;
  for (std::size_t i = 0; i < img.pixels().size(); ++i) {
    err += std::abs(int{luma(img.pixels()[i])} - int{luma(decoded.pixels()[i])});
  }
  EXPECT_LT(err / static_cast<double>(img.pixels().size()), 4.0);
  EXPECT_THROW(encode_jpeg(img, 0), EncodeError);
  EXPECT_THROW(encode_jpeg(img, 101), EncodeError);
}

TEST(Gif, EncoderRejectsWhatItCannotRepresent) {
  RgbaImage many(32, 32);
  for (std::size_t i = 0; i < many.pixels().size(); ++i) {
    many.pixels()[i] = Rgba{static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(i >> 8), 0, 255};
  }
  EXPECT_THROW(encode_gif(many), EncodeError);
  EXPECT_THROW(encode_gif(RgbaImage(2, 2, Rgba{1, 2, 3, 128})), EncodeError);
  EXPECT_THROW(encode_gif(std::span<const RgbaImage>{}), EncodeError);
  const std::vector<RgbaImage> mismatched = {RgbaImage(2, 2), RgbaImage(3, 2)};
  EXPECT_THROW(encode_gif(mismatched), EncodeError);
}

TEST(Gif, LongRunsExerciseTableResets) {
  // 256 colours in a scrambled order on a large canvas forces the code table
  // to fill and reset several times.
  RgbaImage img(300, 200);
  std::mt19937_64 rng(5);
  for (Rgba& p : img.pixels()) {
    const auto v = static_cast<std::uint8_t>(rng() % 256);
    p = Rgba{v, static_cast<std::uint8_t>(255 - v), static_cast<std::uint8_t>(v / 2), 255};
  }
  EXPECT_EQ(decode_image(encode_gif(img)), img);
}

TEST(Decoders, TruncationsNeverCrash) {
  std::mt19937_64 rng(23);
  for (Codec codec : testing::kAllCodecs) {
    const Bytes full = testing::encode_as(testing::random_image(rng, 20, 20), codec);
    for (std::size_t cut = 0; cut < full.size(); cut += 1 + full.size() / 40) {
      const Bytes part(full.begin(), full.begin() + static_cast<long>(cut));
      try {
        const RgbaImage img = decode_image(part);
        EXPECT_GT(img.width(), 0u);
      } catch (const DecodeError&) {
      }
    }
  }
}

TEST(Decoders, BitFlipsNeverCrash) {
  std::mt19937_64 rng(29);
  for (Codec codec : testing::kAllCodecs) {
    const Bytes full = testing::encode_as(testing::random_image(rng, 16, 16), codec);
    for (int trial = 0; trial < 200; ++trial) {
      Bytes mutated = full;
      for (int flips = 0; flips < 3; ++flips) {
        mutated[rng() % mutated.size()] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
      }
      try {
        decode_image(mutated);
      } catch (const DecodeError&) {
      }
    }
  }
}

}  // namespace
}  // namespace histoseek
