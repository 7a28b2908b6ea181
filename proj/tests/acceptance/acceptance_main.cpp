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

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
//
//   quotegraph_acceptance --work-dir DIR [--skip-scaling]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dense_oracles.hpp"
#include "naive_reference.hpp"
#include "quotegraph/analytics.hpp"
#include "quotegraph/corpus_io.hpp"
#include "quotegraph/namebias.hpp"
#include "quotegraph/pipeline.hpp"
#include "quotegraph/quote_cluster.hpp"
#include "quotegraph/synth.hpp"
#include "quotegraph/wikidata_enrich.hpp"

namespace fs = std::filesystem;
using namespace quotegraph;

namespace {

// Collects failures for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string &what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void Near(double got, double want, double tol, const std::string &what) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": got " << got << ", want " << want;
    Expect(std::abs(got - want) <= tol, msg.str());
  }
  void Note(const std::string &s) { notes_.push_back(s); }

  bool ok() const { return failed_ == 0 && checks_ > 0; }
  std::string Summary() const {
    std::ostringstream out;
    out << checks_ << " checks";
    for (const auto &n : notes_) out << ", " << n;
    if (failed_) out << "; " << failed_ << " failed";
    for (const auto &f : failures_) out << "\n      " << f;
    return out.str();
  }

 private:
  std::size_t checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_, notes_;
};

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> DirContents(const fs::path &dir) {
  std::map<std::string, std::string> out;
  for (const auto &e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) {
      out[fs::relative(e.path(), dir).generic_string()] = ReadFile(e.path());
    }
  }
  return out;
}

PipelineConfig ConfigFor(const SyntheticBundle &b, const fs::path &out,
                         int threads = 1) {
  PipelineConfig cfg;
  cfg.articles = b.articles;
  cfg.aliases = b.aliases;
  cfg.snapshot = b.snapshot;
  cfg.hierarchy = b.hierarchy;
  cfg.defunct = b.defunct;
  cfg.out_dir = out;
  cfg.threads = threads;
  return cfg;
}

double TimedRun(const PipelineConfig &cfg) {
  auto start = std::chrono::steady_clock::now();
  RunPipeline(cfg);
  std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
  return d.count();
}

std::string Fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

nlohmann::json ReadJson(const fs::path &path) {
  return nlohmann::json::parse(ReadFile(path));
}

std::set<std::string> Stopwords() {
  const auto &s = DefaultStopwords();
  return {s.begin(), s.end()};
}

// Mean degree recorded in a metrics document against its own counts.
void CheckMetricsIdentity(Check &c, const fs::path &metrics_path,
                          const std::string &label) {
  auto m = ReadJson(metrics_path);
  double nodes = m["nodes"], edges = m["edges"];
  c.Expect(nodes > 0, label + ": empty graph");
  if (nodes > 0) {
    c.Near(m["mean_total_degree"].get<double>(), 2.0 * edges / nodes, 1e-12,
           label + " mean degree");
  }
}

// --- criteria --------------------------------------------------------------

Check EndToEnd(const fs::path &work) {
  Check c;
  auto b = GenerateSynthetic(work / "e2e_in", 250, 7);
  c.Expect(b.article_count >= 200, "fewer than 200 articles");
  c.Expect(b.quote_count >= 500, "fewer than 500 quotes");
  auto cfg = ConfigFor(b, work / "e2e_out");
  double secs = TimedRun(cfg);
  c.Expect(secs < 10.0, "runtime " + Fmt(secs) + " s");

  naive::Options opts;
  opts.stopwords = Stopwords();
  auto expected = naive::BuildQuoteGraph(b.articles, b.aliases, opts);
  std::set<naive::EdgeKey> got;
  for (const auto &e : ReadEdgesTsv(cfg.out_dir / files::kEdges)) {
    got.emplace(e.speaker_qid, e.target_qid, e.quote_id);
  }
  c.Expect(!expected.edges.empty(), "reference produced no edges");
  c.Expect(got == expected.edges,
           "edge sets differ: pipeline " + std::to_string(got.size()) +
               ", reference " + std::to_string(expected.edges.size()));

  // The corpus must actually exercise the noise the rules remove.
  auto summary = ReadJson(cfg.out_dir / files::kRunSummary);
  c.Expect(summary["cluster"]["merged_quotes"].get<int>() > 0,
           "no planted duplicates merged");
  c.Expect(summary["preprocess"]["spurious_mentions"].get<int>() > 0,
           "no spurious mentions seen");
  c.Expect(summary["graph"]["self_loops"].get<int>() > 0, "no self-quotes seen");

  c.Note(std::to_string(b.article_count) + " articles");
  c.Note(std::to_string(b.quote_count) + " quotes");
  c.Note(std::to_string(got.size()) + " edges");
  c.Note("run " + Fmt(secs) + " s");
  return c;
}

std::map<std::string, std::vector<std::string>> MemberMap(
    const std::vector<QuoteGroup> &groups) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto &g : groups) {
    for (const auto &m : g.members) out[m] = g.members;
  }
  return out;
}

void CompareGrouping(Check &c, const std::vector<UniqueQuote> &quotes,
                     const PreprocessConfig &pc, const std::string &label) {
  std::map<std::string, std::vector<std::string>> words;
  for (const auto &q : quotes) words[q.quote_id] = naive::ContentWords(q.tokens);
  auto groups = GroupQuotations(quotes, pc);
  c.Expect(MemberMap(groups) ==
               naive::BruteForceGroups(
                   words, static_cast<std::size_t>(pc.min_shared_substring)),
           label + ": grouping differs");
}

Check Clustering(const fs::path &work) {
  Check c;
  std::size_t corpora = 0, max_quotes = 0, merged = 0;
  // Synthetic news corpora, cut down to at most 50 quotes each.
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto dir = work / "cluster_in";
    auto b = GenerateSynthetic(dir, 16, seed);
    PreprocessConfig pc;
    std::vector<QuoteContext> contexts;
    for (const auto &a : LoadArticles(b.articles)) {
      auto ctx = PreprocessArticle(a, pc);
      contexts.insert(contexts.end(), ctx.begin(), ctx.end());
    }
    auto quotes = CollectQuotes(std::move(contexts));
    if (quotes.size() > 50) quotes.resize(50);
    max_quotes = std::max(max_quotes, quotes.size());
    CompareGrouping(c, quotes, pc, "synthetic seed " + std::to_string(seed));
    for (const auto &g : GroupQuotations(quotes, pc)) merged += g.members.size() - 1;
    ++corpora;
  }
  // Dense random corpora over a tiny vocabulary, across window lengths.
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 rng(seed);
    PreprocessConfig pc;
    pc.min_shared_substring = 2 + static_cast<int>(rng() % 7);
    std::vector<UniqueQuote> quotes;
    std::vector<std::vector<std::string>> texts;
    std::size_t n = 2 + rng() % 49;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::string> t;
      if (!texts.empty() && rng() % 3) {
        const auto &src = texts[rng() % texts.size()];
        std::size_t from = rng() % src.size();
        std::size_t to = from + 1 + rng() % (src.size() - from);
        t.assign(src.begin() + from, src.begin() + to);
      }
      for (std::size_t k = rng() % 10; k > 0; --k) {
        static const char *vocab[] = {"Ka", "lo", "mi", ",", "nu", "."};
        t.insert(t.begin() + rng() % (t.size() + 1), vocab[rng() % 6]);
      }
      if (t.empty()) t.push_back("solo");
      texts.push_back(t);
      UniqueQuote q;
      char id[16];
      std::snprintf(id, sizeof(id), "r%03zu", i);
      q.quote_id = id;
      q.tokens = t;
      quotes.push_back(std::move(q));
    }
    max_quotes = std::max(max_quotes, quotes.size());
    CompareGrouping(c, quotes, pc, "random seed " + std::to_string(seed));
    for (const auto &g : GroupQuotations(quotes, pc)) merged += g.members.size() - 1;
    ++corpora;
  }
  c.Expect(max_quotes <= 50, "corpus above 50 quotes");
  c.Expect(merged > 0, "no corpus had a nontrivial group");
  c.Note(std::to_string(corpora) + " corpora");
  c.Note(std::to_string(merged) + " merged quotes");
  return c;
}

DirectedMultigraph CycleGraph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return DirectedMultigraph(n, e);
}

Check ClosedForms(const fs::path &work) {
  Check c;
  c.Near(GlobalClustering(CycleGraph(3)), 1.0, 1e-12, "triangle clustering");
  c.Near(GlobalClustering(DirectedMultigraph(3, {{0, 1}, {1, 2}})), 0.0, 1e-12,
         "3-path clustering");

  std::vector<std::pair<NodeId, NodeId>> cliques;
  for (NodeId base : {0u, 5u}) {
    for (NodeId i = 0; i < 5; ++i) {
      for (NodeId j = 0; j < 5; ++j) {
        if (i != j) cliques.emplace_back(base + i, base + j);
      }
    }
  }
  auto mix = AttributeMixing(DirectedMultigraph(10, cliques), [](NodeId v) {
    return std::vector<std::string>{v < 5 ? "left" : "right"};
  });
  c.Expect(mix.has_value(), "clique mixing undefined");
  if (mix) c.Near(*mix, 1.0, 1e-12, "monochromatic cliques mixing");

  std::vector<DirectedMultigraph> graphs;
  for (std::size_t n : {1u, 2u, 3u, 7u, 50u, 1000u}) {
    auto pr = PageRank(CycleGraph(n));
    for (double s : pr.scores) c.Near(s, 1.0 / n, 1e-9, std::to_string(n) + "-cycle rank");
    graphs.push_back(CycleGraph(n));
  }
  for (const auto &f : dense::Fixtures()) {
    if (f.n > 0) graphs.emplace_back(f.n, std::vector<std::pair<NodeId, NodeId>>(
                                              f.edges.begin(), f.edges.end()));
  }
  // The end-to-end graph, loaded back from its edge table.
  auto edges_path = work / "e2e_out" / files::kEdges;
  if (fs::exists(edges_path)) {
    auto edges = ReadEdgesTsv(edges_path);
    graphs.push_back(DirectedMultigraph::FromQuoteGraph(AssembleGraph(edges)));
  }
  for (const auto &g : graphs) {
    auto pr = PageRank(g);
    double total = std::accumulate(pr.scores.begin(), pr.scores.end(), 0.0);
    c.Near(total, 1.0, 1e-9, "rank mass on " + std::to_string(g.node_count()) +
                                 "-node graph");
  }
  c.Note(std::to_string(graphs.size()) + " graphs for rank mass");
  return c;
}

Check SmallGraphOracles() {
  Check c;
  auto fixtures = dense::Fixtures();
  for (const auto &f : fixtures) {
    DirectedMultigraph g(f.n, {f.edges.begin(), f.edges.end()});
    c.Near(GlobalClustering(g), dense::Clustering(f.n, f.edges), 1e-9,
           f.name + " clustering");
    auto r = DegreeAssortativity(g);
    auto rr = dense::Assortativity(f.n, f.edges);
    c.Expect(r.has_value() == rr.has_value(), f.name + " assortativity defined");
    if (r && rr) c.Near(*r, *rr, 1e-9, f.name + " assortativity");
    auto m = AttributeMixing(g, [&](NodeId v) { return f.labels[v]; });
    auto mm = dense::Mixing(f);
    c.Expect(m.has_value() == mm.has_value(), f.name + " mixing defined");
    if (m && mm) c.Near(*m, *mm, 1e-9, f.name + " mixing");
    if (f.n == 0) continue;
    auto pr = PageRank(g);
    auto want = dense::PageRank(f.n, f.edges, 0.85);
    for (std::size_t i = 0; i < f.n; ++i) {
      c.Near(pr.scores[i], want[i], 1e-9, f.name + " rank " + std::to_string(i));
    }
  }
  c.Note(std::to_string(fixtures.size()) + " graphs");
  return c;
}

Check RuleTables() {
  Check c;
  WikidataSnapshotRecord party;
  party.party_memberships = {
      {"QA", std::nullopt, PartialDate{2008, 1, 1, DatePrecision::kYear}},
      {"QB", PartialDate{2008, 1, 1, DatePrecision::kYear}, std::nullopt}};
  c.Expect(PartyAtDate(party, Date(2008, 3, 1)) == std::optional<std::string>("QB"),
           "party on 2008-03-01");
  WikidataSnapshotRecord undated;
  undated.party_memberships = {{"QA", std::nullopt, std::nullopt},
                               {"QB", std::nullopt, std::nullopt}};
  c.Expect(PartyAtDate(undated, Date(2008, 3, 1)) == std::optional<std::string>("QB"),
           "undated party");

  SubclassGraph h;
  h.AddEdge("Q33999", "Q483501");
  h.AddEdge("Q36180", "Q2500638");
  auto closure = BuildOccupationClosure(h, DomainTable::Default());
  WikidataSnapshotRecord trump;
  trump.occupations = {"Q33999", "Q36180", "Q82955"};
  c.Expect(EntityDomains(trump, closure) == std::set<Domain>{Domain::kPolitics},
           "actor+writer+politician domains");
  WikidataSnapshotRecord actor;
  actor.occupations = {"Q33999"};
  c.Expect(EntityDomains(actor, closure) == std::set<Domain>{Domain::kArt},
           "actor domains");

  std::set<std::string> defunct = {"Q15180", "Q838261"};
  WikidataSnapshotRecord nat;
  nat.nationalities = {"Q30", "Q15180"};
  c.Expect(ExtractNationalities(nat, defunct) == std::set<std::string>{"Q30"},
           "Soviet Union dropped");
  nat.nationalities = {"Q838261"};
  c.Expect(ExtractNationalities(nat, defunct).empty(), "Yugoslavia dropped");

  auto gender = [](std::vector<std::string> g) {
    WikidataSnapshotRecord r;
    r.genders = std::move(g);
    return ExtractGender(r);
  };
  c.Expect(gender({"Q6581072"}) == Gender::kFemale, "female");
  c.Expect(gender({"Q6581097"}) == Gender::kMale, "male");
  c.Expect(gender({"Q48270"}) == Gender::kOther, "non-binary");
  c.Expect(gender({"Q6581097", "Q48270"}) == Gender::kOther, "multiple genders");
  c.Expect(gender({"Q6581072", "Q6581097"}) == Gender::kOther, "female+male");
  c.Expect(gender({}) == Gender::kUnknown, "no statement");
  return c;
}

Check MeanDegree(const fs::path &work) {
  Check c;
  std::size_t graphs = 0;
  for (const auto &f : dense::Fixtures()) {
    if (f.n == 0) continue;
    DirectedMultigraph g(f.n, {f.edges.begin(), f.edges.end()});
    c.Near(*SummarizeDegrees(g).mean_total_degree,
           2.0 * static_cast<double>(f.edges.size()) / f.n, 1e-12, f.name);
    ++graphs;
  }
  c.Expect(!SummarizeDegrees(DirectedMultigraph()).mean_total_degree.has_value(),
           "empty graph mean reported");
  for (const auto &dir : {"e2e_out", "det_1", "det_n", "scale_10k", "scale_100k"}) {
    auto path = work / dir / files::kMetrics;
    if (!fs::exists(path)) continue;
    CheckMetricsIdentity(c, path, dir);
    ++graphs;
  }
  c.Note(std::to_string(graphs) + " graphs");
  return c;
}

Check Determinism(const fs::path &work, bool skip_scaling) {
  Check c;
  // Byte identity across thread counts, plus a rerun over a stale bundle.
  auto mid = GenerateSynthetic(work / "det_in", 10000, 11);
  auto one = ConfigFor(mid, work / "det_1", 1);
  auto many = ConfigFor(mid, work / "det_n", 4);
  double t10k = TimedRun(one);
  TimedRun(many);
  auto a = DirContents(one.out_dir);
  c.Expect(a == DirContents(many.out_dir), "1 vs 4 threads differ");
  TimedRun(many);
  c.Expect(a == DirContents(many.out_dir), "rerun differs");
  c.Note("10k run " + Fmt(t10k) + " s");

  if (skip_scaling) {
    c.Note("scaling skipped");
    c.Expect(false, "scaling check skipped");
    return c;
  }
  fs::remove_all(work / "det_in");
  fs::remove_all(work / "det_n");
  auto small = GenerateSynthetic(work / "scale_10k_in", 10000, 23);
  auto large = GenerateSynthetic(work / "scale_100k_in", 100000, 23);
  double ts = TimedRun(ConfigFor(small, work / "scale_10k", 1));
  double tl = TimedRun(ConfigFor(large, work / "scale_100k", 1));
  double ratio = tl / ts;
  c.Expect(ratio <= 15.0, "100k/10k runtime ratio " + Fmt(ratio, 2));
  c.Note("10k " + Fmt(ts) + " s");
  c.Note("100k " + Fmt(tl) + " s");
  c.Note("ratio " + Fmt(ratio, 2));
  fs::remove_all(work / "scale_100k_in");
  return c;
}

Check Namebias(const fs::path &work) {
  Check c;
  auto dir = work / "namebias";
  fs::remove_all(dir);
  fs::create_directories(dir);
  ProfileMap profiles;
  std::vector<Edge> edges;
  int quote = 0;
  auto person = [&](const std::string &qid, Gender g, const std::string &given,
                    const std::string &family) {
    EntityProfile p;
    p.qid = qid;
    p.label = given + " " + family;
    p.gender = g;
    p.given_names = {given};
    p.family_names = {family};
    profiles[qid] = p;
  };
  auto refer = [&](const std::string &qid, const std::string &surface, int n) {
    for (int i = 0; i < n; ++i) {
      Edge e;
      e.speaker_qid = "Q1";
      e.target_qid = qid;
      char id[32];
      std::snprintf(id, sizeof(id), "q%05d", quote++);
      e.quote_id = id;
      e.surface = surface;
      edges.push_back(e);
    }
  };
  // Female: 10 first of 50. Male: 5 first of 50.
  person("Q10", Gender::kFemale, "anna", "berg");
  person("Q11", Gender::kFemale, "cleo", "dunn");
  person("Q20", Gender::kMale, "emil", "falk");
  person("Q21", Gender::kMale, "gus", "hale");
  refer("Q10", "Anna", 6);
  refer("Q11", "Cleo", 4);
  refer("Q10", "Berg", 20);
  refer("Q11", "Cleo Dunn", 20);
  refer("Q20", "Emil", 3);
  refer("Q21", "Gus", 2);
  refer("Q20", "Falk", 25);
  refer("Q21", "Gus Hale", 20);
  refer("Q21", "the coach", 7);

  auto rates = ComputeFirstNameRates(edges, profiles);
  c.Expect(rates.rates[Gender::kFemale] == 0.2, "female rate");
  c.Expect(rates.rates[Gender::kMale] == 0.1, "male rate");
  c.Expect(rates.ratio.has_value() && *rates.ratio == 2.0, "library ratio");

  // Same fixture through the namebias stage on disk.
  std::sort(edges.begin(), edges.end(), EdgeLess);
  WriteEdgeSurfacesTsv(dir / files::kEdgeSurfaces, edges);
  WriteProfiles(dir / files::kProfiles, profiles);
  PipelineConfig cfg;
  cfg.out_dir = dir;
  RunNamebias(cfg);
  auto doc = ReadJson(dir / files::kNamebias);
  c.Expect(doc["female_to_male_ratio"].is_number() &&
               doc["female_to_male_ratio"].get<double>() == 2.0,
           "stage ratio " + doc["female_to_male_ratio"].dump());
  c.Note("ratio " + doc["female_to_male_ratio"].dump());
  return c;
}

}  // namespace

int main(int argc, char **argv) {
  fs::path work = "acceptance_work";
  bool skip_scaling = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--work-dir") == 0 && i + 1 < argc) {
      work = argv[++i];
    } else if (std::strcmp(argv[i], "--skip-scaling") == 0) {
      skip_scaling = true;
    } else {
      std::cerr << "usage: " << argv[0] << " --work-dir DIR [--skip-scaling]\n";
      return 2;
    }
  }
  fs::remove_all(work);
  fs::create_directories(work);

  struct Criterion {
    const char *name;
    std::function<Check()> run;
  };
  std::vector<Criterion> criteria = {
      {"end-to-end equivalence with naive reference", [&] { return EndToEnd(work); }},
      {"clustering equals brute-force grouping", [&] { return Clustering(work); }},
      {"metric closed forms", [&] { return ClosedForms(work); }},
      {"small-graph dense oracles", [] { return SmallGraphOracles(); }},
      {"attribute rule tables", [] { return RuleTables(); }},
      {"determinism and scaling", [&] { return Determinism(work, skip_scaling); }},
      {"mean-degree identity", [&] { return MeanDegree(work); }},
      {"first-name ratio fixture", [&] { return Namebias(work); }},
  };
  int failed = 0;
  for (const auto &cr : criteria) {
    Check result;
    try {
      result = cr.run();
    } catch (const std::exception &e) {
      result.Expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (result.ok() ? "PASS " : "FAIL ") << cr.name << " ("
              << result.Summary() << ")" << std::endl;
    if (!result.ok()) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
