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

// Speaker -> mentioned-person edges. An edge is identified by the
// (speaker qid, target qid, quote id) triplet.

#ifndef QUOTEGRAPH_GRAPH_BUILD_HPP_
#define QUOTEGRAPH_GRAPH_BUILD_HPP_

#include <cstddef>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "quotegraph/entity_link.hpp"

namespace quotegraph {

struct Edge {
  std::string speaker_qid;
  std::string target_qid;
  std::string quote_id;
  Date earliest_date;
  std::vector<std::string> article_urls;  // sorted, unique
  std::size_t url_count = 0;
  // Most frequent in-quote surface that resolved to the target.
  std::string surface;

  friend bool operator==(const Edge &, const Edge &) = default;
};

// Orders by (speaker, target, quote).
bool EdgeLess(const Edge &a, const Edge &b);

// The resolved in-quote person set of a single context.
std::set<std::string> ContextMentionSet(const QuoteContext &context,
                                        const AliasTable &table);

// Most frequent per-context set; ties prefer the larger set, then the
// lexicographically smallest comma-joined serialization. May be empty.
std::set<std::string> AggregateMentionSet(const QuoteRecord &record,
                                          const AliasTable &table);

// Most frequent surface resolving to `target` across contexts; ties prefer
// the longer surface, then the lexicographically smallest.
std::string WinningSurface(const QuoteRecord &record, const AliasTable &table,
                           const std::string &target);

// One edge per target, all sharing the record's id, earliest date and url
// union.
std::vector<Edge> BuildEdges(const GlobalAttribution &attribution,
                             const std::set<std::string> &targets,
                             const QuoteRecord &record,
                             const AliasTable &table);

// Erases speaker == target edges in place and returns how many went.
std::size_t RemoveSelfLoops(std::vector<Edge> *edges);

class QuoteGraph {
 public:
  QuoteGraph() = default;

  const std::vector<std::string> &nodes() const { return nodes_; }
  const std::vector<Edge> &edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  // Triplets merged during assembly.
  std::size_t duplicate_count() const { return duplicates_; }

 private:
  friend QuoteGraph AssembleGraph(std::vector<Edge> edges);

  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::size_t duplicates_ = 0;
};

// Sorts edges, merges repeated triplets (earliest date, url union, first
// surface) and takes the endpoint union as the node set.
QuoteGraph AssembleGraph(std::vector<Edge> edges);

struct GraphStats {
  std::size_t records = 0;
  std::size_t unattributed = 0;
  std::size_t without_targets = 0;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
  std::size_t edges = 0;
  std::size_t nodes = 0;
};

// `attributions` may be in any order; records without one are dropped.
QuoteGraph BuildGraph(std::span<const QuoteRecord> records,
                      std::span<const GlobalAttribution> attributions,
                      const AliasTable &table, int threads = 1,
                      GraphStats *stats = nullptr);

// "speaker<TAB>target<TAB>quote<TAB>earliest_date<TAB>url_count".
void WriteEdgesTsv(const std::filesystem::path &path,
                   std::span<const Edge> edges);
// Restores everything but article_urls and surface.
std::vector<Edge> ReadEdgesTsv(const std::filesystem::path &path);

// "speaker<TAB>target<TAB>quote<TAB>surface".
void WriteEdgeSurfacesTsv(const std::filesystem::path &path,
                          std::span<const Edge> edges);
// Restores speaker, target, quote and surface.
std::vector<Edge> ReadEdgeSurfacesTsv(const std::filesystem::path &path);

}  // namespace quotegraph

#endif  // QUOTEGRAPH_GRAPH_BUILD_HPP_
