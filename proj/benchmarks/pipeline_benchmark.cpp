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

#include <filesystem>

#include "quotegraph/pipeline.hpp"
#include "quotegraph/synth.hpp"

namespace quotegraph {
namespace {

namespace fs = std::filesystem;

void BM_RunPipeline(benchmark::State &state) {
  auto root = fs::temp_directory_path() /
              ("quotegraph_bench_" + std::to_string(state.range(0)));
  auto bundle = GenerateSynthetic(root / "in",
                                  static_cast<std::size_t>(state.range(0)), 5);
  PipelineConfig cfg;
  cfg.articles = bundle.articles;
  cfg.aliases = bundle.aliases;
  cfg.snapshot = bundle.snapshot;
  cfg.hierarchy = bundle.hierarchy;
  cfg.defunct = bundle.defunct;
  cfg.out_dir = root / "out";
  for (auto _ : state) RunPipeline(cfg);
  state.SetItemsProcessed(state.iterations() * state.range(0));
  fs::remove_all(root);
}
BENCHMARK(BM_RunPipeline)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace quotegraph
