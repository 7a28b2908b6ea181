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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_util.hpp"

namespace quotegraph {
namespace {

using QidSet = std::set<std::string>;

class GraphBuildTest : public ::testing::Test {
 protected:
  void SetUp() override {
    table_.Add("Barack Obama", "Q76", 1.0);
    table_.Add("Obama", "Q76", 0.8);
    table_.Add("Hillary Clinton", "Q6294", 1.0);
    table_.Add("Clinton", "Q6294", 0.7);
    table_.Add("Bernie Sanders", "Q359442", 1.0);
    table_.Add("Q1 Person", "Q1", 1.0);
    table_.Add("Q2 Person", "Q2", 1.0);
  }

  static QuoteContext Ctx(std::vector<std::string> mentions,
                          std::string url = "u", Date date = Date(2016, 1, 1)) {
    QuoteContext c;
    c.quote_id = "q";
    c.article_uid = url;
    c.url = "https://news.example/" + url;
    c.date = date;
    c.mentions = std::move(mentions);
    return c;
  }

  static QuoteRecord Record(std::vector<QuoteContext> contexts) {
    QuoteRecord r;
    r.quote_id = "q";
    r.members = {"q"};
    r.earliest_date = contexts.empty() ? Date() : contexts.front().date;
    for (const auto &c : contexts) {
      r.earliest_date = std::min(r.earliest_date, c.date);
    }
    r.contexts = std::move(contexts);
    return r;
  }

  static Edge MakeEdge(std::string s, std::string t, std::string q) {
    Edge e;
    e.speaker_qid = std::move(s);
    e.target_qid = std::move(t);
    e.quote_id = std::move(q);
    e.earliest_date = Date(2016, 1, 1);
    return e;
  }

  AliasTable table_;
};

TEST_F(GraphBuildTest, MostCommonMentionSetWins) {
  auto r = Record({Ctx({"Barack Obama", "Hillary Clinton"}),
                   Ctx({"Obama", "Clinton"}), Ctx({"Obama"})});
  EXPECT_EQ(AggregateMentionSet(r, table_), (QidSet{"Q76", "Q6294"}));
  EXPECT_EQ(AggregateMentionSet(Record({Ctx({"Obama"})}), table_),
            (QidSet{"Q76"}));
}

TEST_F(GraphBuildTest, MentionSetTieBreaks) {
  auto tie = Record({Ctx({"Q1 Person"}), Ctx({"Q2 Person"})});
  EXPECT_EQ(AggregateMentionSet(tie, table_), (QidSet{"Q1"}));
  auto larger = Record({Ctx({"Q2 Person", "Obama"}), Ctx({"Q1 Person"})});
  EXPECT_EQ(AggregateMentionSet(larger, table_), (QidSet{"Q2", "Q76"}));
  auto empty_wins = Record({Ctx({}), Ctx({}), Ctx({"Obama"})});
  EXPECT_TRUE(AggregateMentionSet(empty_wins, table_).empty());
  auto unresolved = Record({Ctx({"Nobody Known"})});
  EXPECT_TRUE(AggregateMentionSet(unresolved, table_).empty());
}

TEST_F(GraphBuildTest, WinningSurfaceIsMostFrequentThenLongest) {
  auto r = Record({Ctx({"Obama"}), Ctx({"Obama"}), Ctx({"Barack Obama"})});
  EXPECT_EQ(WinningSurface(r, table_, "Q76"), "Obama");
  auto tie = Record({Ctx({"Obama"}), Ctx({"Barack Obama"})});
  EXPECT_EQ(WinningSurface(tie, table_, "Q76"), "Barack Obama");
  EXPECT_EQ(WinningSurface(tie, table_, "Q6294"), "");
}

TEST_F(GraphBuildTest, BuildEdgesOnePerTargetWithUrlUnion) {
  auto r = Record({Ctx({"Obama", "Clinton"}, "a", Date(2016, 3, 1)),
                   Ctx({"Obama", "Clinton"}, "b", Date(2016, 2, 1)),
                   Ctx({"Obama", "Clinton"}, "c", Date(2016, 4, 1))});
  GlobalAttribution a{"q", "Q22686", 1.5};
  auto edges = BuildEdges(a, AggregateMentionSet(r, table_), r, table_);
  ASSERT_EQ(edges.size(), 2u);
  for (const auto &e : edges) {
    EXPECT_EQ(e.speaker_qid, "Q22686");
    EXPECT_EQ(e.quote_id, "q");
    EXPECT_EQ(e.earliest_date, Date(2016, 2, 1));
    EXPECT_EQ(e.url_count, 3u);
    EXPECT_TRUE(std::is_sorted(e.article_urls.begin(), e.article_urls.end()));
  }
  EXPECT_TRUE(BuildEdges(a, {}, r, table_).empty());
}

TEST_F(GraphBuildTest, SelfLoopsRemoved) {
  std::vector<Edge> edges = {MakeEdge("Q76", "Q76", "q1"),
                             MakeEdge("Q76", "Q6294", "q1"),
                             MakeEdge("Q6294", "Q76", "q2")};
  EXPECT_EQ(RemoveSelfLoops(&edges), 1u);
  ASSERT_EQ(edges.size(), 2u);
  for (const auto &e : edges) EXPECT_NE(e.speaker_qid, e.target_qid);
}

TEST_F(GraphBuildTest, AssembleDeduplicatesTriplets) {
  auto g = AssembleGraph({MakeEdge("Q1", "Q2", "q"), MakeEdge("Q2", "Q3", "q")});
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.duplicate_count(), 0u);

  Edge late = MakeEdge("Q1", "Q2", "q");
  late.earliest_date = Date(2017, 1, 1);
  late.article_urls = {"u1", "u2"};
  late.url_count = 2;
  Edge early = MakeEdge("Q1", "Q2", "q");
  early.earliest_date = Date(2015, 1, 1);
  early.article_urls = {"u2", "u3"};
  early.url_count = 2;
  auto d = AssembleGraph({late, early});
  ASSERT_EQ(d.edge_count(), 1u);
  EXPECT_EQ(d.duplicate_count(), 1u);
  EXPECT_EQ(d.edges()[0].earliest_date, Date(2015, 1, 1));
  EXPECT_EQ(d.edges()[0].article_urls,
            (std::vector<std::string>{"u1", "u2", "u3"}));
  EXPECT_EQ(d.edges()[0].url_count, 3u);

  auto empty = AssembleGraph({});
  EXPECT_EQ(empty.node_count(), 0u);
  EXPECT_EQ(empty.edge_count(), 0u);
}

TEST_F(GraphBuildTest, NodesAreExactlyEndpointsAndOrderIndependent) {
  std::mt19937_64 rng(11);
  std::vector<Edge> edges;
  for (int i = 0; i < 60; ++i) {
    edges.push_back(MakeEdge("Q" + std::to_string(rng() % 9),
                             "Q" + std::to_string(rng() % 9),
                             "q" + std::to_string(rng() % 5)));
  }
  auto base_edges = edges;
  RemoveSelfLoops(&base_edges);
  auto base = AssembleGraph(base_edges);
  std::set<std::string> endpoints;
  for (const auto &e : base.edges()) {
    endpoints.insert(e.speaker_qid);
    endpoints.insert(e.target_qid);
    EXPECT_NE(e.speaker_qid, e.target_qid);
  }
  EXPECT_EQ(std::set<std::string>(base.nodes().begin(), base.nodes().end()),
            endpoints);
  for (int trial = 0; trial < 10; ++trial) {
    auto shuffled = edges;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    RemoveSelfLoops(&shuffled);
    auto g = AssembleGraph(shuffled);
    EXPECT_EQ(g.edges(), base.edges());
    EXPECT_EQ(g.nodes(), base.nodes());
  }
}

TEST_F(GraphBuildTest, BuildGraphCountsDrops) {
  auto with_targets = Record({Ctx({"Obama"})});
  with_targets.quote_id = "q1";
  auto self = Record({Ctx({"Obama"})});
  self.quote_id = "q2";
  auto no_targets = Record({Ctx({})});
  no_targets.quote_id = "q3";
  auto unattributed = Record({Ctx({"Obama"})});
  unattributed.quote_id = "q4";
  std::vector<QuoteRecord> records = {with_targets, self, no_targets,
                                      unattributed};
  std::vector<GlobalAttribution> attributions = {
      {"q1", "Q6294", 1.0}, {"q2", "Q76", 1.0}, {"q3", "Q76", 1.0}};
  for (int threads : {1, 3}) {
    GraphStats stats;
    auto g = BuildGraph(records, attributions, table_, threads, &stats);
    EXPECT_EQ(stats.records, 4u);
    EXPECT_EQ(stats.unattributed, 1u);
    EXPECT_EQ(stats.without_targets, 1u);
    EXPECT_EQ(stats.self_loops, 1u);
    ASSERT_EQ(g.edge_count(), 1u);
    EXPECT_EQ(g.edges()[0].speaker_qid, "Q6294");
    EXPECT_EQ(g.edges()[0].target_qid, "Q76");
    EXPECT_EQ(g.edges()[0].surface, "Obama");
  }
}

TEST_F(GraphBuildTest, TsvRoundTrip) {
  auto dir = testing_util::TestDir();
  Edge a = MakeEdge("Q1", "Q2", "q1");
  a.url_count = 4;
  a.surface = "Ada";
  Edge b = MakeEdge("Q1", "Q3", "q2");
  b.earliest_date = Date(1999, 12, 31);
  b.url_count = 1;
  b.surface = "Lord Byron";
  std::vector<Edge> edges = {a, b};
  WriteEdgesTsv(dir / "e.tsv", edges);
  auto back = ReadEdgesTsv(dir / "e.tsv");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].earliest_date, b.earliest_date);
  EXPECT_EQ(back[0].url_count, 4u);
  EXPECT_EQ(back[1].target_qid, "Q3");
  WriteEdgeSurfacesTsv(dir / "s.tsv", edges);
  auto surfaces = ReadEdgeSurfacesTsv(dir / "s.tsv");
  ASSERT_EQ(surfaces.size(), 2u);
  EXPECT_EQ(surfaces[1].surface, "Lord Byron");
  EXPECT_EQ(testing_util::ReadFile(dir / "e.tsv"),
            "Q1\tQ2\tq1\t2016-01-01\t4\nQ1\tQ3\tq2\t1999-12-31\t1\n");

  testing_util::WriteFile(dir / "bad.tsv", "Q1\tQ2\tq\tnot-a-date\t1\n");
  EXPECT_THROW(ReadEdgesTsv(dir / "bad.tsv"), SchemaError);
}

}  // namespace
}  // namespace quotegraph
