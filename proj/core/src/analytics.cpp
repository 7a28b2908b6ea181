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

#include "quotegraph/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "quotegraph/quote_cluster.hpp"

namespace quotegraph {
namespace {

DistributionTable Ccdf(std::vector<std::size_t> degrees) {
  DistributionTable table;
  if (degrees.empty()) return table;
  std::sort(degrees.begin(), degrees.end());
  const double n = static_cast<double>(degrees.size());
  for (std::size_t i = 0; i < degrees.size();) {
    std::size_t j = i;
    while (j < degrees.size() && degrees[j] == degrees[i]) ++j;
    table.rows.push_back({std::to_string(degrees[i]),
                          static_cast<double>(degrees.size() - i) / n});
    i = j;
  }
  return table;
}

}  // namespace

DirectedMultigraph::DirectedMultigraph(
    std::size_t node_count, std::vector<std::pair<NodeId, NodeId>> edges)
    : edges_(std::move(edges)),
      in_degree_(node_count, 0),
      out_degree_(node_count, 0) {
  for (const auto &[u, v] : edges_) {
    if (u >= node_count || v >= node_count) {
      throw std::out_of_range("edge endpoint outside node range");
    }
    ++out_degree_[u];
    ++in_degree_[v];
  }
}

DirectedMultigraph DirectedMultigraph::FromQuoteGraph(const QuoteGraph &graph) {
  const auto &nodes = graph.nodes();
  auto index = [&](const std::string &qid) {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), qid);
    return static_cast<NodeId>(it - nodes.begin());
  };
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(graph.edge_count());
  for (const auto &e : graph.edges()) {
    edges.emplace_back(index(e.speaker_qid), index(e.target_qid));
  }
  return DirectedMultigraph(nodes.size(), std::move(edges));
}

std::vector<std::vector<NodeId>> DirectedMultigraph::UndirectedProjection()
    const {
  std::vector<std::vector<NodeId>> adj(node_count());
  for (const auto &[u, v] : edges_) {
    if (u == v) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto &list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

double DistributionTable::TotalMass() const {
  double total = 0.0;
  for (const auto &r : rows) total += r.mass;
  return total;
}

DegreeSummary SummarizeDegrees(const DirectedMultigraph &graph) {
  DegreeSummary s;
  const std::size_t n = graph.node_count();
  if (n > 0) {
    s.mean_total_degree = 2.0 * static_cast<double>(graph.edge_count()) /
                          static_cast<double>(n);
  }
  std::vector<std::size_t> in(n), out(n);
  for (NodeId v = 0; v < n; ++v) {
    in[v] = graph.in_degree(v);
    out[v] = graph.out_degree(v);
  }
  s.in_ccdf = Ccdf(std::move(in));
  s.out_ccdf = Ccdf(std::move(out));
  return s;
}

ComponentSummary WeaklyConnectedComponents(const DirectedMultigraph &graph) {
  const std::size_t n = graph.node_count();
  DisjointSet sets(n);
  for (const auto &[u, v] : graph.edges()) sets.Union(u, v);
  std::unordered_map<std::size_t, std::size_t> sizes;
  for (std::size_t v = 0; v < n; ++v) ++sizes[sets.Find(v)];
  ComponentSummary out;
  for (const auto &[root, size] : sizes) out.sizes.push_back(size);
  std::sort(out.sizes.begin(), out.sizes.end(), std::greater<>());
  if (n > 0) {
    out.largest_fraction =
        static_cast<double>(out.sizes.front()) / static_cast<double>(n);
  }
  return out;
}

std::optional<double> DegreeAssortativity(const DirectedMultigraph &graph) {
  auto adj = graph.UndirectedProjection();
  std::size_t ends = 0;
  long double sum = 0.0L;
  for (NodeId u = 0; u < adj.size(); ++u) {
    ends += adj[u].size();
    sum += static_cast<long double>(adj[u].size()) * adj[u].size();
  }
  // Each projected edge contributes (d_u, d_v) and (d_v, d_u).
  if (ends < 4) return std::nullopt;
  const long double mean = sum / static_cast<long double>(ends);
  long double cov = 0.0L, var = 0.0L;
  for (NodeId u = 0; u < adj.size(); ++u) {
    const long double du = static_cast<long double>(adj[u].size()) - mean;
    for (NodeId v : adj[u]) {
      const long double dv = static_cast<long double>(adj[v].size()) - mean;
      cov += du * dv;
      var += du * du;
    }
  }
  if (var == 0.0L) return std::nullopt;
  return static_cast<double>(cov / var);
}

TriangleCounts CountTriangles(const DirectedMultigraph &graph) {
  auto adj = graph.UndirectedProjection();
  const std::size_t n = adj.size();
  TriangleCounts counts;
  for (const auto &list : adj) {
    std::uint64_t d = list.size();
    if (d >= 2) counts.connected_triples += d * (d - 1) / 2;
  }
  // Orient every edge from lower to higher (degree, id) rank so each
  // triangle is found exactly once.
  auto before = [&](NodeId a, NodeId b) {
    return adj[a].size() < adj[b].size() ||
           (adj[a].size() == adj[b].size() && a < b);
  };
  std::vector<std::vector<NodeId>> forward(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : adj[u]) {
      if (before(u, v)) forward[u].push_back(v);
    }
  }
  std::vector<unsigned char> mark(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : forward[u]) mark[v] = 1;
    for (NodeId v : forward[u]) {
      for (NodeId w : forward[v]) counts.triangles += mark[w];
    }
    for (NodeId v : forward[u]) mark[v] = 0;
  }
  return counts;
}

double GlobalClustering(const DirectedMultigraph &graph) {
  auto counts = CountTriangles(graph);
  if (counts.connected_triples == 0) return 0.0;
  return 3.0 * static_cast<double>(counts.triangles) /
         static_cast<double>(counts.connected_triples);
}

MixingMatrix MixingMatrix::FromEdgeEnds(std::span<const EdgeEnds> ends) {
  MixingMatrix m;
  std::map<std::string, std::size_t> index;
  for (const auto &e : ends) {
    if (e.source.empty() || e.target.empty()) continue;
    for (const auto &c : e.source) index.emplace(c, 0);
    for (const auto &c : e.target) index.emplace(c, 0);
  }
  for (auto &[name, i] : index) {
    i = m.categories_.size();
    m.categories_.push_back(name);
  }
  const std::size_t k = m.categories_.size();
  m.raw_.assign(k, std::vector<double>(k, 0.0));
  for (const auto &e : ends) {
    if (e.source.empty() || e.target.empty()) continue;
    const double w = 1.0 / (static_cast<double>(e.source.size()) *
                            static_cast<double>(e.target.size()));
    for (const auto &s : e.source) {
      for (const auto &t : e.target) m.raw_[index[s]][index[t]] += w;
    }
    m.total_ += 1.0;
  }
  m.e_.assign(k, std::vector<double>(k, 0.0));
  m.a_.assign(k, 0.0);
  m.b_.assign(k, 0.0);
  if (m.total_ > 0.0) {
    for (std::size_t i = 0; i < k; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        m.e_[i][j] = m.raw_[i][j] / m.total_;
        row += m.raw_[i][j];
      }
      m.a_[i] = row / m.total_;
    }
    for (std::size_t j = 0; j < k; ++j) {
      double col = 0.0;
      for (std::size_t i = 0; i < k; ++i) col += m.raw_[i][j];
      m.b_[j] = col / m.total_;
    }
  }
  return m;
}

double MixingMatrix::TotalMass() const {
  double total = 0.0;
  for (const auto &row : e_) {
    for (double v : row) total += v;
  }
  return total;
}

std::optional<double> MixingMatrix::AssortativityCoefficient() const {
  if (total_ <= 0.0) return std::nullopt;
  const std::size_t k = categories_.size();
  // Evaluated on raw weights so that an all-diagonal matrix gives exactly 1.
  double trace = 0.0, marginal = 0.0;
  std::vector<double> rows(k, 0.0), cols(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    trace += raw_[i][i];
    for (std::size_t j = 0; j < k; ++j) {
      rows[i] += raw_[i][j];
      cols[j] += raw_[i][j];
    }
  }
  for (std::size_t i = 0; i < k; ++i) marginal += rows[i] * cols[i];
  const double t2 = total_ * total_;
  const double denominator = t2 - marginal;
  if (!(std::abs(denominator) > 1e-12 * t2)) return std::nullopt;
  return (trace * total_ - marginal) / denominator;
}

std::optional<double> AttributeMixing(const DirectedMultigraph &graph,
                                      const NodeCategories &attribute) {
  std::vector<std::vector<std::string>> cats(graph.node_count());
  for (NodeId v = 0; v < graph.node_count(); ++v) cats[v] = attribute(v);
  std::vector<EdgeEnds> ends;
  ends.reserve(graph.edge_count());
  for (const auto &[u, v] : graph.edges()) ends.push_back({cats[u], cats[v]});
  return MixingMatrix::FromEdgeEnds(ends).AssortativityCoefficient();
}

PageRankResult PageRank(const DirectedMultigraph &graph,
                        const PageRankOptions &options) {
  const std::size_t n = graph.node_count();
  PageRankResult result;
  if (n == 0) return result;
  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, uniform), next(n);
  std::vector<double> inv_out(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    if (graph.out_degree(v) > 0) {
      inv_out[v] = 1.0 / static_cast<double>(graph.out_degree(v));
    }
  }
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    double dangling = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      if (graph.out_degree(v) == 0) dangling += rank[v];
    }
    const double base =
        (1.0 - options.damping) * uniform + options.damping * dangling * uniform;
    std::fill(next.begin(), next.end(), base);
    for (const auto &[u, v] : graph.edges()) {
      next[v] += options.damping * rank[u] * inv_out[u];
    }
    double change = 0.0;
    for (NodeId v = 0; v < n; ++v) change += std::abs(next[v] - rank[v]);
    rank.swap(next);
    result.iterations = iter;
    if (change < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.scores = std::move(rank);
  return result;
}

DistributionTable DegreeWeightedDistribution(const DirectedMultigraph &graph,
                                             const NodeCategories &attribute) {
  DistributionTable table;
  if (graph.edge_count() == 0) return table;
  std::map<std::string, double> weight;
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    const double d = static_cast<double>(graph.total_degree(v));
    if (d == 0.0) continue;
    auto cats = attribute(v);
    if (cats.empty()) {
      weight["unknown"] += d;
      continue;
    }
    const double share = d / static_cast<double>(cats.size());
    for (const auto &c : cats) weight[c] += share;
  }
  const double ends = 2.0 * static_cast<double>(graph.edge_count());
  for (const auto &[name, w] : weight) table.rows.push_back({name, w / ends});
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const DistributionRow &a, const DistributionRow &b) {
                     return a.mass > b.mass;
                   });
  return table;
}

std::size_t AgeHistogram::total() const {
  std::size_t n = 0;
  for (const auto &[age, count] : counts) n += count;
  return n;
}

DistributionTable AgeHistogram::AsDistribution() const {
  DistributionTable table;
  const double n = static_cast<double>(total());
  if (n == 0.0) return table;
  for (const auto &[age, count] : counts) {
    table.rows.push_back({std::to_string(age), static_cast<double>(count) / n});
  }
  return table;
}

AgeHistogram AgeDistribution(std::span<const Edge> edges,
                             const ProfileMap &profiles) {
  AgeHistogram hist;
  auto add = [&](const std::string &qid, const Date &date) {
    auto it = profiles.find(qid);
    if (it == profiles.end() || !it->second.birth_date) {
      ++hist.missing_birth_date;
      return;
    }
    int age = date.YearsSince(*it->second.birth_date);
    if (age < 0) {
      ++hist.negative_age;
      return;
    }
    ++hist.counts[age];
  };
  for (const auto &e : edges) {
    add(e.speaker_qid, e.earliest_date);
    add(e.target_qid, e.earliest_date);
  }
  return hist;
}

}  // namespace quotegraph
