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

#include "quotegraph/preprocess.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "quotegraph/text.hpp"

namespace quotegraph {
namespace {

using Tokens = std::vector<std::string>;

const std::string kOpen(kOpenQuoteMark);
const std::string kClose(kCloseQuoteMark);

TEST(ContentWordsTest, DropsPunctuationAndFolds) {
  EXPECT_EQ(ContentWords(Tokens{"I", "love", "you", "."}),
            (Tokens{"i", "love", "you"}));
  EXPECT_EQ(ContentWords(Tokens{}), Tokens{});
  EXPECT_EQ(ContentWords(Tokens{"Trump", ",", "Trump", "!"}),
            (Tokens{"trump", "trump"}));
}

TEST(ContentWordsTest, Idempotent) {
  Tokens t = {"Hello", ",", "WORLD", "--", "2020", "Ünïcode", "!"};
  auto once = ContentWords(t);
  EXPECT_EQ(ContentWords(once), once);
}

TEST(ShortQuotationTest, CountsUniqueWords) {
  PreprocessConfig cfg;
  EXPECT_TRUE(IsShortQuotation(Tokens{"I", "love", "you", "."}, cfg));
  EXPECT_TRUE(IsShortQuotation(
      Tokens{"Trump", ",", "Trump", ",", "Trump", ",", "Trump", ",", "Trump",
             "!"},
      cfg));
  EXPECT_FALSE(IsShortQuotation(Tokens{"one", "two", "three", "four", "five"},
                                cfg));
  EXPECT_TRUE(IsShortQuotation(Tokens{"one", "two", "three", "four", "One"},
                               cfg));
}

TEST(ShortQuotationTest, InvariantUnderReorderAndDuplication) {
  PreprocessConfig cfg;
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Tokens t;
    std::size_t n = 1 + rng() % 8;
    for (std::size_t i = 0; i < n; ++i) {
      t.push_back(std::string(1, static_cast<char>('a' + rng() % 7)));
    }
    bool expected = IsShortQuotation(t, cfg);
    Tokens u = t;
    std::shuffle(u.begin(), u.end(), rng);
    u.push_back(t[rng() % t.size()]);
    EXPECT_EQ(IsShortQuotation(u, cfg), expected);
  }
}

TEST(QuotationEndTest, FirstClosingMark) {
  EXPECT_EQ(FindQuotationEnd(Tokens{kOpen, "a", "b", kClose}, 1), 3u);
  EXPECT_EQ(FindQuotationEnd(Tokens{kOpen, "a", kClose, "c", kClose}, 1), 2u);
  EXPECT_FALSE(FindQuotationEnd(Tokens{kOpen, "a", "b"}, 1));
}

TEST(QuotationEndTest, ResultIsClosingMarkAtOrAfterStart) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    Tokens t;
    std::size_t n = 2 + rng() % 10;
    for (std::size_t i = 0; i < n; ++i) {
      t.push_back(rng() % 4 == 0 ? kClose : std::string("w"));
    }
    std::size_t start = rng() % n;
    auto end = FindQuotationEnd(t, start);
    if (end) {
      EXPECT_GE(*end, start);
      EXPECT_EQ(t[*end], kClose);
    } else {
      EXPECT_EQ(std::count(t.begin() + start, t.end(), kClose), 0);
    }
  }
}

TEST(SpuriousMentionTest, ThreeRules) {
  PreprocessConfig cfg;
  auto m = [](std::string s) { return MentionSpan{0, 1, std::move(s)}; };
  std::vector<MentionSpan> in = {m("J . Smith"), m("."), m("the"), m("J ."),
                                 m("42"), m("Mr"), m("Obama")};
  auto out = FilterSpuriousMentions(in, cfg);
  std::vector<std::string> kept;
  for (const auto &x : out) kept.push_back(x.surface);
  EXPECT_EQ(kept, (std::vector<std::string>{"J . Smith", "Obama"}));
}

TEST(SpuriousMentionTest, CustomStopwords) {
  PreprocessConfig cfg;
  cfg.stopwords = {"obama"};
  EXPECT_TRUE(IsExcludedMentionToken("OBAMA", cfg));
  EXPECT_FALSE(IsExcludedMentionToken("the", cfg));
}

Article QuoteArticle() {
  Article a;
  a.article_uid = "a";
  a.url = "u";
  a.date = Date(2016, 1, 1);
  // 0     1     2 3    4       5      6    7     8 9      10
  // Trump said , “ Barack Obama lied to me ” Barack
  a.tokens = {"Trump", "said", ",",  kOpen, "Barack", "Obama",
              "lied",  "to",   "me", kClose, "Barack"};
  a.quotations = {{"q1", 4, {{"Trump", 0.9, 0, 0}}}};
  return a;
}

TEST(MentionsInQuotationTest, InsideOutsideAndFallback) {
  Article a = QuoteArticle();
  QuoteSpan span{4, 9};
  std::vector<MentionSpan> inside = {{4, 6, "Barack Obama"}};
  EXPECT_EQ(MentionsInQuotation(a, span, inside).size(), 1u);

  std::vector<MentionSpan> outside = {{0, 1, "Trump"}};
  EXPECT_TRUE(MentionsInQuotation(a, span, outside).empty());

  // Runs past the article end: decided by the surface alone.
  std::vector<MentionSpan> past = {{10, 12, "Barack Obama"}};
  EXPECT_EQ(MentionsInQuotation(a, span, past).size(), 1u);
  std::vector<MentionSpan> past_absent = {{10, 12, "Barack Trump"}};
  EXPECT_TRUE(MentionsInQuotation(a, span, past_absent).empty());

  // Crosses the closing boundary.
  std::vector<MentionSpan> crossing = {{8, 11, "me ” Barack"}};
  EXPECT_TRUE(MentionsInQuotation(a, span, crossing).empty());
  std::vector<MentionSpan> crossing_hit = {{5, 10, "Obama lied"}};
  EXPECT_EQ(MentionsInQuotation(a, span, crossing_hit).size(), 1u);
}

TEST(MentionsInQuotationTest, ContainmentImpliesSubstring) {
  // For consistent spans, every contained mention also passes the
  // substring test.
  Article a = QuoteArticle();
  QuoteSpan span{4, 9};
  NormalizedTokenString quote(
      std::span<const std::string>(a.tokens.data() + 4, 5));
  for (std::size_t s = 4; s < 9; ++s) {
    for (std::size_t e = s + 1; e <= 9; ++e) {
      std::span<const std::string> slice(a.tokens.data() + s, e - s);
      MentionSpan m{s, e, JoinTokens(slice)};
      std::vector<MentionSpan> one = {m};
      ASSERT_EQ(MentionsInQuotation(a, span, one).size(), 1u);
      EXPECT_TRUE(quote.Contains(NormalizedTokenString(slice)));
    }
  }
}

TEST(NormalizedTokenStringTest, SingleSpaces) {
  Tokens t = {"a", "b", "c"};
  NormalizedTokenString s(t);
  EXPECT_EQ(s.value(), "a b c");
  EXPECT_EQ(s.value().find("  "), std::string::npos);
}

TEST(PreprocessArticleTest, AppliesStepsInOrder) {
  PreprocessConfig cfg;
  Article a;
  a.article_uid = "a";
  a.url = "u";
  a.date = Date(2016, 1, 1);
  a.tokens = {"X",   "said", kOpen, "alpha", "beta", "gamma", "delta", "Kim",
              "and", "the",  "J",   ".",     kClose, kOpen, "hi", "there",
              kClose, kOpen, "never", "closed"};
  //           0      1       2      3        4       5        6       7
  //           8      9       10     11       12      13      14    15
  //           16     17      18     19
  a.quotations = {{"long", 3, {{"X", 0.8, 0, 0}, {"Y", 0.1, {}, {}}}},
                  {"short", 14, {}},
                  {"open", 18, {}}};
  a.mentions = {{0, 1, "X"},
                {7, 8, "Kim"},
                {9, 10, "the"},
                {10, 12, "J ."},
                {4, 5, "beta", "ORG"}};
  PreprocessStats stats;
  auto out = PreprocessArticle(a, cfg, &stats);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].quote_id, "long");
  EXPECT_EQ(out[0].tokens.size(), 9u);
  EXPECT_EQ(out[0].mentions, (std::vector<std::string>{"Kim"}));
  ASSERT_EQ(out[0].candidates.size(), 2u);
  EXPECT_FALSE(out[0].candidates[0].start_token);
  EXPECT_EQ(stats.occurrences, 3u);
  EXPECT_EQ(stats.unterminated, 1u);
  EXPECT_EQ(stats.short_quotes, 1u);
  EXPECT_EQ(stats.non_person_mentions, 1u);
  // "X", "the" and "J ." all lack a usable name token.
  EXPECT_EQ(stats.spurious_mentions, 3u);
  EXPECT_EQ(stats.contexts, 1u);

  EXPECT_EQ(ParseContext(SerializeContext(out[0])), out[0]);
}

TEST(PreprocessConfigTest, Bounds) {
  PreprocessConfig cfg;
  EXPECT_EQ(cfg.min_unique_words, 5);
  EXPECT_EQ(cfg.min_shared_substring, 8);
  EXPECT_NO_THROW(cfg.Validate());
  cfg.min_shared_substring = 1;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
  cfg.min_shared_substring = 2;
  cfg.min_unique_words = 0;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
}

TEST(StopwordTest, DefaultListCoversCommonWords) {
  const auto &s = DefaultStopwords();
  EXPECT_GE(s.size(), 150u);
  for (const char *w : {"the", "a", "and", "of", "to", "you"}) {
    EXPECT_TRUE(s.contains(w)) << w;
  }
  EXPECT_FALSE(s.contains("obama"));
}

}  // namespace
}  // namespace quotegraph
