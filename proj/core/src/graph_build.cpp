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

#include "quotegraph/graph_build.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <tuple>
#include <unordered_map>

#include "quotegraph/parallel.hpp"
#include "quotegraph/text.hpp"

namespace quotegraph {
namespace {

std::string JoinSet(const std::set<std::string> &s) {
  std::string out;
  for (const auto &v : s) {
    if (!out.empty()) out.push_back(',');
    out += v;
  }
  return out;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    out.push_back(line.substr(pos, tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return out;
}

[[noreturn]] void BadRow(const std::filesystem::path &path, std::size_t line) {
  throw SchemaError(path.string() + ":" + std::to_string(line) +
                    ": malformed edge row");
}

}  // namespace

bool EdgeLess(const Edge &a, const Edge &b) {
  return std::tie(a.speaker_qid, a.target_qid, a.quote_id) <
         std::tie(b.speaker_qid, b.target_qid, b.quote_id);
}

std::set<std::string> ContextMentionSet(const QuoteContext &context,
                                        const AliasTable &table) {
  std::set<std::string> out;
  for (const auto &surface : context.mentions) {
    if (auto qid = table.Resolve(surface)) out.insert(*qid);
  }
  return out;
}

std::set<std::string> AggregateMentionSet(const QuoteRecord &record,
                                          const AliasTable &table) {
  std::map<std::set<std::string>, std::size_t> counts;
  for (const auto &context : record.contexts) {
    ++counts[ContextMentionSet(context, table)];
  }
  const std::set<std::string> *best = nullptr;
  std::size_t best_count = 0;
  std::string best_key;
  for (const auto &[set, count] : counts) {
    std::string key = JoinSet(set);
    bool better = !best || count > best_count ||
                  (count == best_count &&
                   (set.size() > best->size() ||
                    (set.size() == best->size() && key < best_key)));
    if (better) {
      best = &set;
      best_count = count;
      best_key = std::move(key);
    }
  }
  return best ? *best : std::set<std::string>{};
}

std::string WinningSurface(const QuoteRecord &record, const AliasTable &table,
                           const std::string &target) {
  std::map<std::string, std::size_t> counts;
  for (const auto &context : record.contexts) {
    for (const auto &surface : context.mentions) {
      auto qid = table.Resolve(surface);
      if (qid && *qid == target) ++counts[surface];
    }
  }
  const std::string *best = nullptr;
  std::size_t best_count = 0, best_len = 0;
  for (const auto &[surface, count] : counts) {
    std::size_t len = CodePointCount(surface);
    // Map order already yields the lexicographically smallest on full ties.
    if (!best || count > best_count ||
        (count == best_count && len > best_len)) {
      best = &surface;
      best_count = count;
      best_len = len;
    }
  }
  return best ? *best : std::string();
}

std::vector<Edge> BuildEdges(const GlobalAttribution &attribution,
                             const std::set<std::string> &targets,
                             const QuoteRecord &record,
                             const AliasTable &table) {
  std::set<std::string> urls;
  for (const auto &c : record.contexts) urls.insert(c.url);
  std::vector<Edge> out;
  out.reserve(targets.size());
  for (const auto &target : targets) {
    Edge e;
    e.speaker_qid = attribution.speaker_qid;
    e.target_qid = target;
    e.quote_id = record.quote_id;
    e.earliest_date = record.earliest_date;
    e.article_urls.assign(urls.begin(), urls.end());
    e.url_count = e.article_urls.size();
    e.surface = WinningSurface(record, table, target);
    out.push_back(std::move(e));
  }
  return out;
}

std::size_t RemoveSelfLoops(std::vector<Edge> *edges) {
  auto it = std::remove_if(edges->begin(), edges->end(), [](const Edge &e) {
    return e.speaker_qid == e.target_qid;
  });
  std::size_t removed = static_cast<std::size_t>(edges->end() - it);
  edges->erase(it, edges->end());
  return removed;
}

QuoteGraph AssembleGraph(std::vector<Edge> edges) {
  QuoteGraph g;
  std::stable_sort(edges.begin(), edges.end(), EdgeLess);
  for (auto &e : edges) {
    if (!g.edges_.empty() && !EdgeLess(g.edges_.back(), e)) {
      Edge &kept = g.edges_.back();
      ++g.duplicates_;
      kept.earliest_date = std::min(kept.earliest_date, e.earliest_date);
      std::vector<std::string> merged;
      std::set_union(kept.article_urls.begin(), kept.article_urls.end(),
                     e.article_urls.begin(), e.article_urls.end(),
                     std::back_inserter(merged));
      kept.article_urls = std::move(merged);
      kept.url_count = std::max({kept.url_count, e.url_count,
                                 kept.article_urls.size()});
      continue;
    }
    g.edges_.push_back(std::move(e));
  }
  std::vector<std::string> nodes;
  nodes.reserve(g.edges_.size() * 2);
  for (const auto &e : g.edges_) {
    nodes.push_back(e.speaker_qid);
    nodes.push_back(e.target_qid);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  g.nodes_ = std::move(nodes);
  return g;
}

QuoteGraph BuildGraph(std::span<const QuoteRecord> records,
                      std::span<const GlobalAttribution> attributions,
                      const AliasTable &table, int threads, GraphStats *stats) {
  std::unordered_map<std::string_view, const GlobalAttribution *> by_quote;
  for (const auto &a : attributions) by_quote[a.quote_id] = &a;

  std::vector<std::vector<Edge>> per_record(records.size());
  std::vector<unsigned char> status(records.size(), 0);  // 1 unattributed, 2 no targets
  ParallelFor(records.size(), threads, [&](std::size_t i) {
    auto it = by_quote.find(records[i].quote_id);
    if (it == by_quote.end()) {
      status[i] = 1;
      return;
    }
    auto targets = AggregateMentionSet(records[i], table);
    if (targets.empty()) {
      status[i] = 2;
      return;
    }
    per_record[i] = BuildEdges(*it->second, targets, records[i], table);
  });

  GraphStats local;
  local.records = records.size();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (status[i] == 1) ++local.unattributed;
    if (status[i] == 2) ++local.without_targets;
    std::move(per_record[i].begin(), per_record[i].end(),
              std::back_inserter(edges));
  }
  local.self_loops = RemoveSelfLoops(&edges);
  QuoteGraph graph = AssembleGraph(std::move(edges));
  local.duplicates = graph.duplicate_count();
  local.edges = graph.edge_count();
  local.nodes = graph.node_count();
  if (stats) *stats = local;
  return graph;
}

void WriteEdgesTsv(const std::filesystem::path &path,
                   std::span<const Edge> edges) {
  auto out = OpenOutput(path);
  for (const auto &e : edges) {
    out << e.speaker_qid << '\t' << e.target_qid << '\t' << e.quote_id << '\t'
        << e.earliest_date.ToString() << '\t' << e.url_count << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<Edge> ReadEdgesTsv(const std::filesystem::path &path) {
  auto in = OpenInput(path);
  std::vector<Edge> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = SplitTabs(line);
    if (f.size() != 5) BadRow(path, line_no);
    auto date = Date::Parse(f[3]);
    std::size_t urls = 0;
    auto [ptr, ec] = std::from_chars(f[4].data(), f[4].data() + f[4].size(), urls);
    if (!date || ec != std::errc() || ptr != f[4].data() + f[4].size()) {
      BadRow(path, line_no);
    }
    Edge e;
    e.speaker_qid = f[0];
    e.target_qid = f[1];
    e.quote_id = f[2];
    e.earliest_date = *date;
    e.url_count = urls;
    out.push_back(std::move(e));
  }
  return out;
}

void WriteEdgeSurfacesTsv(const std::filesystem::path &path,
                          std::span<const Edge> edges) {
  auto out = OpenOutput(path);
  for (const auto &e : edges) {
    out << e.speaker_qid << '\t' << e.target_qid << '\t' << e.quote_id << '\t'
        << e.surface << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<Edge> ReadEdgeSurfacesTsv(const std::filesystem::path &path) {
  auto in = OpenInput(path);
  std::vector<Edge> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = SplitTabs(line);
    if (f.size() != 4) BadRow(path, line_no);
    Edge e;
    e.speaker_qid = f[0];
    e.target_qid = f[1];
    e.quote_id = f[2];
    e.surface = f[3];
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace quotegraph
