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

#include "quotegraph/analytics.hpp"

namespace quotegraph {
namespace {

// Preferential-attachment-like multigraph with a heavy-tailed degree profile.
DirectedMultigraph MakeGraph(std::size_t n, std::size_t m) {
  std::mt19937_64 rng(42);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> ends = {0};
  for (std::size_t k = 0; k < m; ++k) {
    NodeId u = static_cast<NodeId>(rng() % n);
    NodeId v = rng() % 2 ? ends[rng() % ends.size()] : static_cast<NodeId>(rng() % n);
    edges.emplace_back(u, v);
    ends.push_back(v);
  }
  return DirectedMultigraph(n, std::move(edges));
}

void BM_PageRank(benchmark::State &state) {
  auto g = MakeGraph(static_cast<std::size_t>(state.range(0)),
                     static_cast<std::size_t>(state.range(0)) * 16);
  for (auto _ : state) benchmark::DoNotOptimize(PageRank(g));
}
BENCHMARK(BM_PageRank)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_CountTriangles(benchmark::State &state) {
  auto g = MakeGraph(static_cast<std::size_t>(state.range(0)),
                     static_cast<std::size_t>(state.range(0)) * 16);
  for (auto _ : state) benchmark::DoNotOptimize(CountTriangles(g));
}
BENCHMARK(BM_CountTriangles)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_DegreeAssortativity(benchmark::State &state) {
  auto g = MakeGraph(100000, 1600000);
  for (auto _ : state) benchmark::DoNotOptimize(DegreeAssortativity(g));
}
BENCHMARK(BM_DegreeAssortativity)->Unit(benchmark::kMillisecond);

void BM_AttributeMixing(benchmark::State &state) {
  auto g = MakeGraph(100000, 1600000);
  const std::vector<std::string> palette[] = {{"a"}, {"b"}, {"c"}, {"a", "b"}, {}};
  auto attr = [&](NodeId v) { return palette[v % 5]; };
  for (auto _ : state) benchmark::DoNotOptimize(AttributeMixing(g, attr));
}
BENCHMARK(BM_AttributeMixing)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace quotegraph
