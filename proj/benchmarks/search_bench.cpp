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

#include <array>
#include <random>
#include <string>
#include <vector>

#include "histoseek/repository.hpp"
#include "histoseek/search.hpp"

namespace {

using namespace histoseek;

Signature random_signature(std::mt19937_64& rng) {
  std::array<double, kLevels> p{};
  double total = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double v = static_cast<double>(rng() % 1000 + 1);
    p[rng() % kLevels] += v;
    total += v;
  }
  for (double& v : p) v = v / total * 100.0;
  return Signature(p);
}

std::vector<ImageEntry> corpus(std::size_t n) {
  std::mt19937_64 rng(42);
  std::vector<ImageEntry> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ImageEntry e;
    e.image_url = "http://img.example/" + std::to_string(i) + ".png";
    e.page_url = "http://pages.example/" + std::to_string(i % 97);
    e.domain = "bench";
    e.relevance = static_cast<double>(rng() % 100) / 10.0;
    e.signature = random_signature(rng);
    e.id = entry_id(e.image_url, e.page_url, e.domain);
    out.push_back(std::move(e));
  }
  return out;
}

void BM_RankProbable(benchmark::State& state) {
  const auto entries = corpus(static_cast<std::size_t>(state.range(0)));
  const Signature query = entries.front().signature;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_matches(query, MatchMode::kProbable, 50, entries));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RankProbable)->RangeMultiplier(10)->Range(100, 100000);

void BM_RepositoryScanAndRank(benchmark::State& state) {
  Repository repo(":memory:");
  for (ImageEntry e : corpus(static_cast<std::size_t>(state.range(0)))) repo.insert_entry(std::move(e));
  const Signature query = corpus(1).front().signature;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_matches(query, MatchMode::kExact, 0, repo.scan_domain("bench")));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RepositoryScanAndRank)->RangeMultiplier(10)->Range(100, 10000);

}  // namespace

BENCHMARK_MAIN();
