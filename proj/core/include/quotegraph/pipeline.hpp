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

// Stage orchestration. Every stage reads its inputs from disk and writes
// its outputs into the output directory, so stages can be run one at a
// time and a full run is exactly the stages run in order:
//
//   ingest      articles            -> articles.valid.jsonl, rejects.log
//   preprocess  articles.valid.jsonl -> contexts.jsonl
//   cluster     contexts.jsonl      -> records.jsonl, groups.tsv
//   link        records.jsonl, aliases -> attributions.tsv
//   graph       records.jsonl, attributions.tsv, aliases
//                                   -> edges.tsv, edge_surfaces.tsv
//   enrich      edges.tsv, snapshot, hierarchy, defunct
//                                   -> nodes.tsv, profiles.jsonl
//   analyze     edges.tsv, profiles.jsonl -> metrics.json, distributions/
//   namebias    edge_surfaces.tsv, profiles.jsonl
//                                   -> references.tsv, namebias.json
//
// Each stage also merges its counters into run_summary.json.

#ifndef QUOTEGRAPH_PIPELINE_HPP_
#define QUOTEGRAPH_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quotegraph/analytics.hpp"
#include "quotegraph/preprocess.hpp"

namespace quotegraph {

namespace files {
inline constexpr std::string_view kValidArticles = "articles.valid.jsonl";
inline constexpr std::string_view kRejects = "rejects.log";
inline constexpr std::string_view kContexts = "contexts.jsonl";
inline constexpr std::string_view kRecords = "records.jsonl";
inline constexpr std::string_view kGroups = "groups.tsv";
inline constexpr std::string_view kAttributions = "attributions.tsv";
inline constexpr std::string_view kEdges = "edges.tsv";
inline constexpr std::string_view kEdgeSurfaces = "edge_surfaces.tsv";
inline constexpr std::string_view kNodes = "nodes.tsv";
inline constexpr std::string_view kProfiles = "profiles.jsonl";
inline constexpr std::string_view kMetrics = "metrics.json";
inline constexpr std::string_view kDistributions = "distributions";
inline constexpr std::string_view kReferences = "references.tsv";
inline constexpr std::string_view kNamebias = "namebias.json";
inline constexpr std::string_view kRunSummary = "run_summary.json";
}  // namespace files

struct PipelineConfig {
  PreprocessConfig preprocess;
  std::optional<std::filesystem::path> stopwords;
  double min_global_probability = 0.0;
  PageRankOptions pagerank;
  // Countries for which mixing by party is reported.
  std::vector<std::string> party_countries = {"Q30", "Q145", "Q668"};
  std::size_t top_pagerank = 10;

  std::filesystem::path articles;
  std::filesystem::path aliases;
  std::filesystem::path snapshot;
  std::filesystem::path hierarchy;
  std::filesystem::path defunct;
  std::filesystem::path out_dir = "out";

  int threads = 1;

  // Throws std::invalid_argument on out-of-range numeric settings.
  void Validate() const;
};

// A fatal stage failure. stage() names the stage ("ingest", "link", ...).
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string &message);
  const std::string &stage() const { return stage_; }

 private:
  std::string stage_;
};

// Checks that every external input the given stages need is readable.
// Throws StageError naming the first stage whose input is missing.
void CheckInputs(const PipelineConfig &cfg,
                 const std::vector<std::string> &stages);

void RunIngest(const PipelineConfig &cfg);
void RunPreprocess(const PipelineConfig &cfg);
void RunCluster(const PipelineConfig &cfg);
void RunLink(const PipelineConfig &cfg);
void RunGraph(const PipelineConfig &cfg);
void RunEnrich(const PipelineConfig &cfg);
void RunAnalyze(const PipelineConfig &cfg);
void RunNamebias(const PipelineConfig &cfg);

// Validates all inputs, then runs every stage in order.
void RunPipeline(const PipelineConfig &cfg);

const std::vector<std::string> &StageNames();
// Runs one stage by name; throws std::invalid_argument for unknown names.
void RunStage(std::string_view name, const PipelineConfig &cfg);

}  // namespace quotegraph

#endif  // QUOTEGRAPH_PIPELINE_HPP_
