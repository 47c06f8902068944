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

#include <benchmark/benchmark.h>

#include <random>

#include "histoseek/codec.hpp"
#include "histoseek/image.hpp"

namespace {

using namespace histoseek;

RgbaImage noisy_gradient(std::size_t side) {
  std::mt19937 rng(7);
  RgbaImage img(side, side);
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      const auto base = static_cast<unsigned>((x + 2 * y) * 255 / (3 * side));
      img.at(x, y) = Rgba{static_cast<std::uint8_t>(base), static_cast<std::uint8_t>(rng() % 256),
                          static_cast<std::uint8_t>(255 - base), 255};
    }
  }
  return img;
}

void BM_GrayHistogramSignature(benchmark::State& state) {
  const RgbaImage img = noisy_gradient(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(signature(histogram(to_gray8(img))));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_GrayHistogramSignature)->RangeMultiplier(4)->Range(16, 1024);

Bytes as_png(const RgbaImage& img) { return encode_png(img); }
Bytes as_jpeg(const RgbaImage& img) { return encode_jpeg(img); }
Bytes as_bmp(const RgbaImage& img) { return encode_bmp(img); }

void BM_SignatureOfEncoded(benchmark::State& state, Bytes (*encode)(const RgbaImage&)) {
  const Bytes bytes = encode(noisy_gradient(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(signature_of_bytes(bytes));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes.size()));
}
BENCHMARK_CAPTURE(BM_SignatureOfEncoded, png, as_png)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK_CAPTURE(BM_SignatureOfEncoded, jpeg, as_jpeg)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK_CAPTURE(BM_SignatureOfEncoded, bmp, as_bmp)->Arg(64)->Arg(256)->Arg(512);

void BM_Distances(benchmark::State& state) {
  const Signature a = signature(histogram(to_gray8(noisy_gradient(64))));
  const Signature b = signature(histogram(to_gray8(noisy_gradient(96))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(chebyshev_gap(a, b));
    benchmark::DoNotOptimize(intersection_similarity(a, b));
  }
}
BENCHMARK(BM_Distances);

}  // namespace

BENCHMARK_MAIN();
