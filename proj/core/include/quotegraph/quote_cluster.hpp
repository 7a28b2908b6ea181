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

// Near-duplicate quotation grouping.
//
// Two quotations are linked when, after case folding and dropping
// punctuation, they share a run of at least l_s consecutive words. Such a
// run exists iff they share an identical l_s-word window, so linking is a
// hash join on windows ("shingles") and groups are the connected
// components of the link relation. Each group is replaced by its longest
// member, which inherits every member's article contexts.

#ifndef QUOTEGRAPH_QUOTE_CLUSTER_HPP_
#define QUOTEGRAPH_QUOTE_CLUSTER_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quotegraph/preprocess.hpp"

namespace quotegraph {

struct QuoteShingle {
  std::vector<std::string> words;
  std::string source_quote;

  friend bool operator==(const QuoteShingle &, const QuoteShingle &) = default;
};

// Distinct l_s-word windows over the content words, in order of first
// occurrence. Empty when there are fewer than l_s content words.
std::vector<QuoteShingle> Shingles(std::string_view quote_id,
                                   std::span<const std::string> tokens,
                                   const PreprocessConfig &cfg);

// All contexts sharing a quote id.
struct UniqueQuote {
  std::string quote_id;
  std::vector<std::string> tokens;
  std::size_t content_word_count = 0;
  std::vector<QuoteContext> contexts;
};

// Strict weak order over contexts used wherever context order could leak
// into results.
bool ContextLess(const QuoteContext &a, const QuoteContext &b);

// Buckets contexts by quote id (sorted by id, contexts in ContextLess
// order). A quote's text is its context with the most content words,
// earliest in ContextLess order on ties.
std::vector<UniqueQuote> CollectQuotes(std::vector<QuoteContext> contexts);

struct QuoteGroup {
  std::vector<std::string> members;  // sorted
  std::string representative;

  friend bool operator==(const QuoteGroup &, const QuoteGroup &) = default;
};

struct QuoteLength {
  std::string quote_id;
  std::size_t content_words = 0;
};

// Most content words wins; ties go to the lexicographically smallest id.
// Requires a nonempty span.
std::string SelectRepresentative(std::span<const QuoteLength> members);

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n);
  std::size_t Find(std::size_t x);
  // Returns true if x and y were in different sets.
  bool Union(std::size_t x, std::size_t y);

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

// Partitions `quotes` into groups, sorted by smallest member id. Window
// extraction runs on `threads` workers; the union pass is sequential in
// input order, so the partition never depends on the thread count.
std::vector<QuoteGroup> GroupQuotations(std::span<const UniqueQuote> quotes,
                                        const PreprocessConfig &cfg,
                                        int threads = 1);

// A unique quotation after grouping.
struct QuoteRecord {
  std::string quote_id;  // representative
  std::vector<std::string> members;
  std::vector<std::string> tokens;
  std::vector<QuoteContext> contexts;
  Date earliest_date;

  friend bool operator==(const QuoteRecord &, const QuoteRecord &) = default;
};

// `quotes` must be sorted by quote id and contain every group member.
QuoteRecord MergeGroupContexts(const QuoteGroup &group,
                               std::span<const UniqueQuote> quotes);

std::string SerializeRecord(const QuoteRecord &record);
QuoteRecord ParseRecord(std::string_view line);

// "quote_id<TAB>representative_id", sorted by quote id.
void WriteGroupsTsv(const std::filesystem::path &path,
                    std::span<const QuoteGroup> groups);

struct ClusterStats {
  std::size_t contexts = 0;
  std::size_t unique_quotes = 0;
  std::size_t groups = 0;
  std::size_t merged_quotes = 0;  // members that are not representatives
};

// CollectQuotes + GroupQuotations + MergeGroupContexts. Records are sorted
// by quote id.
std::vector<QuoteRecord> ClusterContexts(std::vector<QuoteContext> contexts,
                                         const PreprocessConfig &cfg,
                                         int threads = 1,
                                         std::vector<QuoteGroup> *groups = nullptr,
                                         ClusterStats *stats = nullptr);

}  // namespace quotegraph

#endif  // QUOTEGRAPH_QUOTE_CLUSTER_HPP_
