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

#ifndef QUOTEGRAPH_ENTITY_LINK_HPP_
#define QUOTEGRAPH_ENTITY_LINK_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "quotegraph/quote_cluster.hpp"

namespace quotegraph {

struct AliasCandidate {
  std::string qid;
  double prior = 0.0;

  friend bool operator==(const AliasCandidate &, const AliasCandidate &) = default;
};

// Case-folded surface form -> candidate entities. Immutable once loaded and
// safe to share across threads.
class AliasTable {
 public:
  struct LoadReport {
    std::size_t lines = 0;
    std::size_t entries = 0;
    std::size_t malformed = 0;
  };

  // "surface<TAB>qid<TAB>prior" per line. Throws IoError.
  static AliasTable Load(const std::filesystem::path &path,
                         LoadReport *report = nullptr);

  // Adds a candidate; repeated (surface, qid) pairs keep the larger prior.
  // Throws std::invalid_argument for a bad qid or negative prior.
  void Add(std::string_view surface, std::string_view qid, double prior);

  // Highest prior after case folding; ties go to the smallest qid.
  std::optional<std::string> Resolve(std::string_view surface) const;

  std::span<const AliasCandidate> Candidates(std::string_view surface) const;

  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    std::vector<AliasCandidate> candidates;
    std::size_t best = 0;
  };
  std::unordered_map<std::string, Entry> entries_;
};

struct GlobalAttribution {
  std::string quote_id;
  std::string speaker_qid;
  // Sum of local probabilities over contexts, not normalized.
  double global_probability = 0.0;

  friend bool operator==(const GlobalAttribution &,
                         const GlobalAttribution &) = default;
};

// Resolves every candidate surface in every context, sums the local
// probabilities per entity and returns the argmax (ties: smallest qid).
// nullopt when nothing resolves or the winner is below
// `min_global_probability`.
std::optional<GlobalAttribution> AttributeQuotation(
    const QuoteRecord &record, const AliasTable &table,
    double min_global_probability = 0.0);

// Order-independent sum: values are sorted before accumulation so that the
// result does not depend on the order contexts arrive in.
double StableSum(std::vector<double> values);

// "quote_id<TAB>speaker_qid<TAB>global_probability" rows.
void WriteAttributionsTsv(const std::filesystem::path &path,
                          std::span<const GlobalAttribution> attributions);
std::vector<GlobalAttribution> ReadAttributionsTsv(
    const std::filesystem::path &path);

}  // namespace quotegraph

#endif  // QUOTEGRAPH_ENTITY_LINK_HPP_
