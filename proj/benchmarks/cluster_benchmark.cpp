// Copyright 2026 The Quotegraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "quotegraph/entity_link.hpp"
#include "quotegraph/quote_cluster.hpp"

namespace quotegraph {
namespace {

// Quotes drawn from a shared pool of sentences, so that a fraction of them
// overlap by a full window and end up grouped.
std::vector<UniqueQuote> MakeQuotes(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> vocab;
  for (int i = 0; i < 5000; ++i) vocab.push_back("w" + std::to_string(i));
  std::vector<UniqueQuote> quotes(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto &q = quotes[i];
    q.quote_id = "q" + std::to_string(i);
    std::size_t len = 10 + rng() % 30;
    if (i > 0 && rng() % 10 == 0) {
      const auto &src = quotes[rng() % i].tokens;
      q.tokens.assign(src.begin(), src.begin() + std::min<std::size_t>(src.size(), 12));
    }
    while (q.tokens.size() < len) q.tokens.push_back(vocab[rng() % vocab.size()]);
    q.content_word_count = q.tokens.size();
  }
  return quotes;
}

void BM_GroupQuotations(benchmark::State &state) {
  auto quotes = MakeQuotes(static_cast<std::size_t>(state.range(0)), 1);
  PreprocessConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(GroupQuotations(quotes, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GroupQuotations)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_Shingles(benchmark::State &state) {
  auto quotes = MakeQuotes(1, 2);
  PreprocessConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Shingles(quotes[0].quote_id, quotes[0].tokens, cfg));
  }
}
BENCHMARK(BM_Shingles);

void BM_AliasResolve(benchmark::State &state) {
  AliasTable table;
  for (int i = 0; i < 100000; ++i) {
    table.Add("Person Number" + std::to_string(i), "Q" + std::to_string(i + 1), 0.5);
  }
  std::mt19937_64 rng(3);
  std::vector<std::string> probes;
  for (int i = 0; i < 1024; ++i) {
    probes.push_back("PERSON number" + std::to_string(rng() % 120000));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(table.Resolve(probes[i++ & 1023]));
  }
}
BENCHMARK(BM_AliasResolve);

}  // namespace
}  // namespace quotegraph
