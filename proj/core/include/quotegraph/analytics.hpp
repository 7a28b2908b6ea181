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

// Structural and demographic statistics over the speaker -> target graph.
//
// Degree assortativity and clustering use the simple undirected projection
// (parallel edges collapsed, loops dropped). Degree moments, components,
// mixing, PageRank and degree-weighted distributions use the directed
// multigraph. All reductions run in a fixed order, so results do not
// depend on thread count.

#ifndef QUOTEGRAPH_ANALYTICS_HPP_
#define QUOTEGRAPH_ANALYTICS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quotegraph/graph_build.hpp"
#include "quotegraph/wikidata_enrich.hpp"

namespace quotegraph {

using NodeId = std::uint32_t;

// Densely indexed directed multigraph.
class DirectedMultigraph {
 public:
  DirectedMultigraph() = default;
  // Throws std::out_of_range if an endpoint is >= node_count.
  DirectedMultigraph(std::size_t node_count,
                     std::vector<std::pair<NodeId, NodeId>> edges);

  // Node i is graph.nodes()[i].
  static DirectedMultigraph FromQuoteGraph(const QuoteGraph &graph);

  std::size_t node_count() const { return out_degree_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::pair<NodeId, NodeId>> &edges() const { return edges_; }
  std::size_t in_degree(NodeId v) const { return in_degree_[v]; }
  std::size_t out_degree(NodeId v) const { return out_degree_[v]; }
  std::size_t total_degree(NodeId v) const {
    return in_degree_[v] + out_degree_[v];
  }

  // Sorted neighbor lists of the simple undirected projection.
  std::vector<std::vector<NodeId>> UndirectedProjection() const;

 private:
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<std::size_t> in_degree_;
  std::vector<std::size_t> out_degree_;
};

struct DistributionRow {
  std::string bin;
  double mass = 0.0;

  friend bool operator==(const DistributionRow &, const DistributionRow &) = default;
};

struct DistributionTable {
  std::vector<DistributionRow> rows;

  double TotalMass() const;
};

struct DegreeSummary {
  std::optional<double> mean_total_degree;  // 2|E|/|V|; nullopt when empty
  // P(d >= d_k) over the distinct degree values d_k, ascending.
  DistributionTable in_ccdf;
  DistributionTable out_ccdf;
};

DegreeSummary SummarizeDegrees(const DirectedMultigraph &graph);

struct ComponentSummary {
  std::vector<std::size_t> sizes;  // descending
  double largest_fraction = 0.0;
};

// Weakly connected components.
ComponentSummary WeaklyConnectedComponents(const DirectedMultigraph &graph);

// Pearson correlation of the degrees at either end of every projected edge,
// each edge counted in both orientations. nullopt with fewer than two
// projected edges or zero degree variance.
std::optional<double> DegreeAssortativity(const DirectedMultigraph &graph);

struct TriangleCounts {
  std::uint64_t triangles = 0;
  std::uint64_t connected_triples = 0;  // paths of length two
};

TriangleCounts CountTriangles(const DirectedMultigraph &graph);

// 3 * triangles / connected triples; 0 when there are no triples.
double GlobalClustering(const DirectedMultigraph &graph);

// Category sets at the source and target end of one directed edge. An
// empty set marks an unlabeled end; an end with k categories spreads its
// edge's weight evenly over them.
struct EdgeEnds {
  std::vector<std::string> source;
  std::vector<std::string> target;
};

class MixingMatrix {
 public:
  static MixingMatrix FromEdgeEnds(std::span<const EdgeEnds> ends);

  const std::vector<std::string> &categories() const { return categories_; }
  // e[i][j]: fraction of edges from category i to category j.
  const std::vector<std::vector<double>> &e() const { return e_; }
  const std::vector<double> &a() const { return a_; }  // row sums
  const std::vector<double> &b() const { return b_; }  // column sums
  double labeled_weight() const { return total_; }
  double TotalMass() const;

  // (sum_i e_ii - sum_i a_i b_i) / (1 - sum_i a_i b_i); nullopt when no
  // labeled edge exists or the denominator vanishes.
  std::optional<double> AssortativityCoefficient() const;

 private:
  std::vector<std::string> categories_;
  std::vector<std::vector<double>> raw_;
  std::vector<std::vector<double>> e_;
  std::vector<double> a_, b_;
  double total_ = 0.0;
};

using NodeCategories = std::function<std::vector<std::string>(NodeId)>;

std::optional<double> AttributeMixing(const DirectedMultigraph &graph,
                                      const NodeCategories &attribute);

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-10;
  int max_iter = 200;
};

struct PageRankResult {
  std::vector<double> scores;
  int iterations = 0;
  bool converged = false;
};

// Power iteration with uniform teleport; dangling mass is spread uniformly.
// Stops once the L1 change drops below the tolerance.
PageRankResult PageRank(const DirectedMultigraph &graph,
                        const PageRankOptions &options = {});

// Mass of category c = sum of total degrees of its nodes / (2|E|). Nodes
// without categories count under "unknown". Rows sorted by mass descending,
// then name.
DistributionTable DegreeWeightedDistribution(const DirectedMultigraph &graph,
                                             const NodeCategories &attribute);

struct AgeHistogram {
  std::map<int, std::size_t> counts;  // whole-year age -> edge ends
  std::size_t missing_birth_date = 0;
  std::size_t negative_age = 0;

  std::size_t total() const;
  DistributionTable AsDistribution() const;
};

// Age of every edge end at the edge's earliest date.
AgeHistogram AgeDistribution(std::span<const Edge> edges,
                             const ProfileMap &profiles);

}  // namespace quotegraph

#endif  // QUOTEGRAPH_ANALYTICS_HPP_
