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

#include "quotegraph/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <system_error>
#include <utility>

#include <nlohmann/json.hpp>

#include "quotegraph/corpus_io.hpp"
#include "quotegraph/entity_link.hpp"
#include "quotegraph/graph_build.hpp"
#include "quotegraph/namebias.hpp"
#include "quotegraph/parallel.hpp"
#include "quotegraph/quote_cluster.hpp"
#include "quotegraph/wikidata_enrich.hpp"

namespace quotegraph {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

fs::path OutPath(const PipelineConfig &cfg, std::string_view name) {
  return cfg.out_dir / fs::path(std::string(name));
}

// Merges one stage's counters into run_summary.json. Keys are sorted so
// the file does not depend on the order stages ran in.
void RecordStage(const PipelineConfig &cfg, const std::string &stage,
                 nlohmann::json counters) {
  auto path = OutPath(cfg, files::kRunSummary);
  nlohmann::json summary = nlohmann::json::object();
  if (fs::exists(path)) {
    std::ifstream in(path);
    summary = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (!summary.is_object()) summary = nlohmann::json::object();
  }
  summary[stage] = std::move(counters);
  auto out = OpenOutput(path);
  out << summary.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

std::string FormatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

ordered_json OptionalNumber(const std::optional<double> &v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

void WriteDistribution(const fs::path &path, const DistributionTable &table) {
  auto out = OpenOutput(path);
  out << "bin,mass\n";
  for (const auto &row : table.rows) {
    out << row.bin << ',' << FormatDouble(row.mass) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

template <typename T, typename Parse>
std::vector<T> ReadJsonLines(const fs::path &path, Parse parse) {
  auto in = OpenInput(path);
  std::vector<T> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(parse(line));
    } catch (const SchemaError &e) {
      throw SchemaError(path.string() + ":" + std::to_string(n) + ": " +
                        e.what());
    }
  }
  return out;
}

std::vector<std::string> AsVector(const std::set<std::string> &s) {
  return {s.begin(), s.end()};
}

// Runs body and turns any library failure into a StageError for `stage`.
template <typename Body>
void Guard(const std::string &stage, Body body) {
  try {
    body();
  } catch (const StageError &) {
    throw;
  } catch (const std::exception &e) {
    throw StageError(stage, e.what());
  }
}

void RequireFile(const std::string &stage, const fs::path &path,
                 std::string_view what) {
  std::error_code ec;
  if (path.empty()) {
    throw StageError(stage, "no " + std::string(what) + " path given");
  }
  if (!fs::is_regular_file(path, ec)) {
    throw StageError(stage, std::string(what) + " not found: " + path.string());
  }
}

PreprocessConfig EffectivePreprocess(const PipelineConfig &cfg) {
  PreprocessConfig pc = cfg.preprocess;
  if (cfg.stopwords) pc.stopwords = LoadStopwords(*cfg.stopwords);
  return pc;
}

}  // namespace

void PipelineConfig::Validate() const {
  preprocess.Validate();
  // Summed over contexts, so values above 1 are meaningful.
  if (!(min_global_probability >= 0.0 && std::isfinite(min_global_probability))) {
    throw std::invalid_argument("min_global_probability must be finite and >= 0");
  }
  if (!(pagerank.damping > 0.0 && pagerank.damping < 1.0)) {
    throw std::invalid_argument("damping must be in (0, 1)");
  }
  if (!(pagerank.tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  if (pagerank.max_iter < 1) {
    throw std::invalid_argument("max_iter must be at least 1");
  }
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  for (const auto &q : party_countries) {
    if (!IsValidQid(q)) throw std::invalid_argument("bad country QID: " + q);
  }
}

StageError::StageError(std::string stage, const std::string &message)
    : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}

const std::vector<std::string> &StageNames() {
  static const std::vector<std::string> kNames = {
      "ingest", "preprocess", "cluster", "link",
      "graph",  "enrich",     "analyze", "namebias"};
  return kNames;
}

void CheckInputs(const PipelineConfig &cfg,
                 const std::vector<std::string> &stages) {
  auto wants = [&](std::string_view s) {
    return std::find(stages.begin(), stages.end(), s) != stages.end();
  };
  if (wants("ingest")) RequireFile("ingest", cfg.articles, "articles");
  if (wants("preprocess") && cfg.stopwords) {
    RequireFile("preprocess", *cfg.stopwords, "stopword list");
  }
  if (wants("link")) RequireFile("link", cfg.aliases, "alias table");
  if (wants("graph")) RequireFile("graph", cfg.aliases, "alias table");
  if (wants("enrich")) {
    RequireFile("enrich", cfg.snapshot, "snapshot");
    RequireFile("enrich", cfg.hierarchy, "occupation hierarchy");
    RequireFile("enrich", cfg.defunct, "defunct country list");
  }
}

void RunIngest(const PipelineConfig &cfg) {
  CheckInputs(cfg, {"ingest"});
  Guard("ingest", [&] {
    auto valid_path = OutPath(cfg, files::kValidArticles);
    auto out = OpenOutput(valid_path);
    ArticleReader reader(cfg.articles, cfg.threads);
    std::vector<Article> batch;
    while (reader.NextBatch(&batch)) {
      for (const auto &a : batch) out << SerializeArticle(a) << '\n';
    }
    if (!out) throw IoError("write failed: " + valid_path.string());
    const auto &report = reader.report();
    WriteRejectsLog(OutPath(cfg, files::kRejects), report.rejects);
    RecordStage(cfg, "ingest",
                {{"lines", report.lines},
                 {"accepted", report.accepted},
                 {"rejected", report.rejects.size()}});
  });
}

void RunPreprocess(const PipelineConfig &cfg) {
  CheckInputs(cfg, {"preprocess"});
  auto in_path = OutPath(cfg, files::kValidArticles);
  RequireFile("preprocess", in_path, "validated articles");
  Guard("preprocess", [&] {
    PreprocessConfig pc = EffectivePreprocess(cfg);
    pc.Validate();
    auto out_path = OutPath(cfg, files::kContexts);
    auto out = OpenOutput(out_path);
    ArticleReader reader(in_path, cfg.threads);
    PreprocessStats total;
    std::vector<Article> batch;
    while (reader.NextBatch(&batch)) {
      std::vector<std::vector<QuoteContext>> slots(batch.size());
      std::vector<PreprocessStats> stats(batch.size());
      ParallelFor(batch.size(), cfg.threads, [&](std::size_t i) {
        slots[i] = PreprocessArticle(batch[i], pc, &stats[i]);
      });
      for (std::size_t i = 0; i < batch.size(); ++i) {
        total += stats[i];
        for (const auto &c : slots[i]) out << SerializeContext(c) << '\n';
      }
    }
    if (!out) throw IoError("write failed: " + out_path.string());
    if (!reader.report().rejects.empty()) {
      throw SchemaError("validated article file contains invalid lines");
    }
    RecordStage(cfg, "preprocess",
                {{"articles", total.articles},
                 {"occurrences", total.occurrences},
                 {"unterminated", total.unterminated},
                 {"short_quotes", total.short_quotes},
                 {"non_person_mentions", total.non_person_mentions},
                 {"spurious_mentions", total.spurious_mentions},
                 {"contexts", total.contexts}});
  });
}

void RunCluster(const PipelineConfig &cfg) {
  auto in_path = OutPath(cfg, files::kContexts);
  RequireFile("cluster", in_path, "contexts");
  Guard("cluster", [&] {
    PreprocessConfig pc = EffectivePreprocess(cfg);
    pc.Validate();
    auto contexts = ReadJsonLines<QuoteContext>(in_path, ParseContext);
    std::vector<QuoteGroup> groups;
    ClusterStats stats;
    auto records =
        ClusterContexts(std::move(contexts), pc, cfg.threads, &groups, &stats);
    auto out_path = OutPath(cfg, files::kRecords);
    auto out = OpenOutput(out_path);
    for (const auto &r : records) out << SerializeRecord(r) << '\n';
    if (!out) throw IoError("write failed: " + out_path.string());
    WriteGroupsTsv(OutPath(cfg, files::kGroups), groups);
    RecordStage(cfg, "cluster",
                {{"contexts", stats.contexts},
                 {"unique_quotes", stats.unique_quotes},
                 {"groups", stats.groups},
                 {"merged_quotes", stats.merged_quotes}});
  });
}

void RunLink(const PipelineConfig &cfg) {
  CheckInputs(cfg, {"link"});
  auto in_path = OutPath(cfg, files::kRecords);
  RequireFile("link", in_path, "quote records");
  Guard("link", [&] {
    AliasTable::LoadReport alias_report;
    auto table = AliasTable::Load(cfg.aliases, &alias_report);
    auto records = ReadJsonLines<QuoteRecord>(in_path, ParseRecord);
    std::vector<std::optional<GlobalAttribution>> slots(records.size());
    ParallelFor(records.size(), cfg.threads, [&](std::size_t i) {
      slots[i] =
          AttributeQuotation(records[i], table, cfg.min_global_probability);
    });
    std::vector<GlobalAttribution> attributions;
    for (auto &s : slots) {
      if (s) attributions.push_back(std::move(*s));
    }
    WriteAttributionsTsv(OutPath(cfg, files::kAttributions), attributions);
    RecordStage(cfg, "link",
                {{"records", records.size()},
                 {"attributed", attributions.size()},
                 {"unattributed", records.size() - attributions.size()},
                 {"alias_lines", alias_report.lines},
                 {"alias_entries", alias_report.entries},
                 {"alias_malformed", alias_report.malformed}});
  });
}

void RunGraph(const PipelineConfig &cfg) {
  CheckInputs(cfg, {"graph"});
  auto records_path = OutPath(cfg, files::kRecords);
  auto attributions_path = OutPath(cfg, files::kAttributions);
  RequireFile("graph", records_path, "quote records");
  RequireFile("graph", attributions_path, "attributions");
  Guard("graph", [&] {
    auto table = AliasTable::Load(cfg.aliases);
    auto records = ReadJsonLines<QuoteRecord>(records_path, ParseRecord);
    auto attributions = ReadAttributionsTsv(attributions_path);
    GraphStats stats;
    auto graph = BuildGraph(records, attributions, table, cfg.threads, &stats);
    WriteEdgesTsv(OutPath(cfg, files::kEdges), graph.edges());
    WriteEdgeSurfacesTsv(OutPath(cfg, files::kEdgeSurfaces), graph.edges());
    RecordStage(cfg, "graph",
                {{"records", stats.records},
                 {"unattributed", stats.unattributed},
                 {"without_targets", stats.without_targets},
                 {"self_loops", stats.self_loops},
                 {"duplicates", stats.duplicates},
                 {"edges", stats.edges},
                 {"nodes", stats.nodes}});
  });
}

void RunEnrich(const PipelineConfig &cfg) {
  CheckInputs(cfg, {"enrich"});
  auto edges_path = OutPath(cfg, files::kEdges);
  RequireFile("enrich", edges_path, "edges");
  Guard("enrich", [&] {
    auto graph = AssembleGraph(ReadEdgesTsv(edges_path));
    SnapshotReport snap_report;
    auto snapshot = LoadSnapshot(cfg.snapshot, &snap_report);
    HierarchyReport hier_report;
    auto hierarchy = LoadHierarchy(cfg.hierarchy, &hier_report);
    auto defunct = LoadQidSet(cfg.defunct);
    auto closure = BuildOccupationClosure(hierarchy, DomainTable::Default());

    const auto &nodes = graph.nodes();
    std::vector<std::optional<EntityProfile>> slots(nodes.size());
    ParallelFor(nodes.size(), cfg.threads, [&](std::size_t i) {
      auto it = snapshot.find(nodes[i]);
      if (it != snapshot.end()) {
        slots[i] = BuildProfile(it->second, defunct, closure);
      }
    });
    ProfileMap profiles;
    for (auto &s : slots) {
      if (s) {
        std::string qid = s->qid;
        profiles.emplace(std::move(qid), std::move(*s));
      }
    }
    WriteProfiles(OutPath(cfg, files::kProfiles), profiles);
    WriteNodesTsv(OutPath(cfg, files::kNodes), nodes, graph.edges(), profiles);
    RecordStage(cfg, "enrich",
                {{"nodes", nodes.size()},
                 {"profiled_nodes", profiles.size()},
                 {"unprofiled_nodes", nodes.size() - profiles.size()},
                 {"snapshot_lines", snap_report.lines},
                 {"snapshot_duplicates", snap_report.duplicates},
                 {"snapshot_rejected", snap_report.rejects.size()},
                 {"inverted_memberships", snap_report.inverted_memberships},
                 {"hierarchy_lines", hier_report.lines},
                 {"hierarchy_malformed", hier_report.malformed},
                 {"hierarchy_self_edges", hier_report.self_edges},
                 {"defunct_countries", defunct.size()}});
  });
}

void RunAnalyze(const PipelineConfig &cfg) {
  auto edges_path = OutPath(cfg, files::kEdges);
  auto profiles_path = OutPath(cfg, files::kProfiles);
  RequireFile("analyze", edges_path, "edges");
  RequireFile("analyze", profiles_path, "profiles");
  Guard("analyze", [&] {
    auto graph = AssembleGraph(ReadEdgesTsv(edges_path));
    auto profiles = ReadProfiles(profiles_path);
    auto g = DirectedMultigraph::FromQuoteGraph(graph);
    const auto &nodes = graph.nodes();

    auto profile_of = [&](NodeId v) -> const EntityProfile * {
      auto it = profiles.find(nodes[v]);
      return it == profiles.end() ? nullptr : &it->second;
    };
    NodeCategories nationality = [&](NodeId v) {
      const auto *p = profile_of(v);
      return p ? AsVector(p->nationalities) : std::vector<std::string>{};
    };
    NodeCategories domain = [&](NodeId v) {
      std::vector<std::string> out;
      if (const auto *p = profile_of(v)) {
        for (auto d : p->domains) out.emplace_back(DomainName(d));
      }
      return out;
    };
    NodeCategories gender = [&](NodeId v) {
      const auto *p = profile_of(v);
      if (!p || p->gender == Gender::kUnknown) return std::vector<std::string>{};
      return std::vector<std::string>{std::string(GenderName(p->gender))};
    };

    auto degrees = SummarizeDegrees(g);
    auto components = WeaklyConnectedComponents(g);
    auto pr = PageRank(g, cfg.pagerank);

    ordered_json party = ordered_json::object();
    for (const auto &country : cfg.party_countries) {
      std::vector<EdgeEnds> ends;
      auto party_at = [&](const std::string &qid, const Date &date,
                          bool *in_country) {
        std::vector<std::string> out;
        auto it = profiles.find(qid);
        *in_country = it != profiles.end() &&
                      it->second.nationalities.count(country) > 0;
        if (!*in_country) return out;
        if (auto p = PartyAtDate(it->second.party_memberships, date)) {
          out.push_back(*p);
        }
        return out;
      };
      for (const auto &e : graph.edges()) {
        bool s_in = false, t_in = false;
        EdgeEnds end;
        end.source = party_at(e.speaker_qid, e.earliest_date, &s_in);
        end.target = party_at(e.target_qid, e.earliest_date, &t_in);
        if (s_in && t_in) ends.push_back(std::move(end));
      }
      auto m = MixingMatrix::FromEdgeEnds(ends);
      party[country] = {{"edges", ends.size()},
                        {"labeled_weight", m.labeled_weight()},
                        {"assortativity",
                         OptionalNumber(m.AssortativityCoefficient())}};
    }

    std::vector<std::size_t> order(pr.scores.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return pr.scores[a] > pr.scores[b];
    });
    ordered_json top = ordered_json::array();
    for (std::size_t i = 0; i < std::min(order.size(), cfg.top_pagerank); ++i) {
      top.push_back({{"qid", nodes[order[i]]}, {"score", pr.scores[order[i]]}});
    }

    auto age = AgeDistribution(graph.edges(), profiles);
    ordered_json metrics;
    metrics["nodes"] = g.node_count();
    metrics["edges"] = g.edge_count();
    metrics["mean_total_degree"] = OptionalNumber(degrees.mean_total_degree);
    metrics["components"] = {{"count", components.sizes.size()},
                             {"largest_size", components.sizes.empty()
                                                  ? 0
                                                  : components.sizes.front()},
                             {"largest_fraction", components.largest_fraction}};
    metrics["degree_assortativity"] = OptionalNumber(DegreeAssortativity(g));
    auto tri = CountTriangles(g);
    metrics["clustering"] = {{"triangles", tri.triangles},
                             {"connected_triples", tri.connected_triples},
                             {"global", GlobalClustering(g)}};
    metrics["mixing"] = {
        {"nationality", OptionalNumber(AttributeMixing(g, nationality))},
        {"domain", OptionalNumber(AttributeMixing(g, domain))},
        {"gender", OptionalNumber(AttributeMixing(g, gender))},
        {"party", party}};
    metrics["pagerank"] = {{"damping", cfg.pagerank.damping},
                           {"tolerance", cfg.pagerank.tolerance},
                           {"max_iter", cfg.pagerank.max_iter},
                           {"iterations", pr.iterations},
                           {"converged", pr.converged},
                           {"top", top}};
    metrics["age"] = {{"ends_with_age", age.total()},
                      {"missing_birth_date", age.missing_birth_date},
                      {"negative_age", age.negative_age}};
    metrics["conventions"] = {
        {"degree_assortativity", "simple undirected projection"},
        {"clustering", "simple undirected projection"},
        {"mixing", "directed edge ends, multi-valued ends split evenly"},
        {"pagerank", "uniform teleport, dangling mass spread uniformly"}};

    auto metrics_path = OutPath(cfg, files::kMetrics);
    auto out = OpenOutput(metrics_path);
    out << metrics.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + metrics_path.string());

    auto dist = cfg.out_dir / fs::path(std::string(files::kDistributions));
    WriteDistribution(dist / "in_degree_ccdf.csv", degrees.in_ccdf);
    WriteDistribution(dist / "out_degree_ccdf.csv", degrees.out_ccdf);
    WriteDistribution(dist / "nationality.csv",
                      DegreeWeightedDistribution(g, nationality));
    WriteDistribution(dist / "domain.csv", DegreeWeightedDistribution(g, domain));
    WriteDistribution(dist / "gender.csv", DegreeWeightedDistribution(g, gender));
    WriteDistribution(dist / "age.csv", age.AsDistribution());

    RecordStage(cfg, "analyze",
                {{"nodes", g.node_count()},
                 {"edges", g.edge_count()},
                 {"profiled_nodes", profiles.size()},
                 {"pagerank_iterations", pr.iterations}});
  });
}

void RunNamebias(const PipelineConfig &cfg) {
  auto surfaces_path = OutPath(cfg, files::kEdgeSurfaces);
  auto profiles_path = OutPath(cfg, files::kProfiles);
  RequireFile("namebias", surfaces_path, "edge surfaces");
  RequireFile("namebias", profiles_path, "profiles");
  Guard("namebias", [&] {
    auto edges = ReadEdgeSurfacesTsv(surfaces_path);
    auto profiles = ReadProfiles(profiles_path);
    auto rows = ClassifyEdges(edges, profiles);
    WriteReferenceTable(OutPath(cfg, files::kReferences), rows);
    auto rates = ComputeFirstNameRates(rows);

    ordered_json counts = ordered_json::object();
    for (const auto &[g, c] : rates.counts) {
      counts[std::string(GenderName(g))] = {{"first", c.first},
                                            {"last", c.last},
                                            {"full", c.full},
                                            {"other", c.other}};
    }
    ordered_json rate_json = ordered_json::object();
    for (const auto &[g, r] : rates.rates) {
      rate_json[std::string(GenderName(g))] = r;
    }
    ordered_json doc = {{"references", rows.size()},
                        {"counts", counts},
                        {"first_name_rate", rate_json},
                        {"female_to_male_ratio", OptionalNumber(rates.ratio)}};
    auto path = OutPath(cfg, files::kNamebias);
    auto out = OpenOutput(path);
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
    RecordStage(cfg, "namebias", {{"references", rows.size()}});
  });
}

void RunStage(std::string_view name, const PipelineConfig &cfg) {
  static const std::vector<
      std::pair<std::string_view, void (*)(const PipelineConfig &)>>
      kStages = {{"ingest", RunIngest},   {"preprocess", RunPreprocess},
                 {"cluster", RunCluster}, {"link", RunLink},
                 {"graph", RunGraph},     {"enrich", RunEnrich},
                 {"analyze", RunAnalyze}, {"namebias", RunNamebias}};
  for (const auto &[n, fn] : kStages) {
    if (n == name) {
      fn(cfg);
      return;
    }
  }
  throw std::invalid_argument("unknown stage: " + std::string(name));
}

void RunPipeline(const PipelineConfig &cfg) {
  cfg.Validate();
  CheckInputs(cfg, StageNames());
  std::error_code ec;
  fs::remove(OutPath(cfg, files::kRunSummary), ec);
  for (const auto &name : StageNames()) RunStage(name, cfg);
}

}  // namespace quotegraph
