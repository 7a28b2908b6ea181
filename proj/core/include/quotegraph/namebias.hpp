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

#ifndef QUOTEGRAPH_NAMEBIAS_HPP_
#define QUOTEGRAPH_NAMEBIAS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quotegraph/graph_build.hpp"
#include "quotegraph/wikidata_enrich.hpp"

namespace quotegraph {

enum class ReferenceForm { kFirst, kLast, kFull, kOther };

std::string_view ReferenceFormName(ReferenceForm form);

// Whether the surface names the person by given name, family name or both.
// Names match as whole word sequences after case folding.
ReferenceForm ClassifyReference(std::string_view surface,
                                const EntityProfile &profile);

struct ReferenceRow {
  std::string quote_id;
  std::string target_qid;
  std::string surface;
  ReferenceForm form = ReferenceForm::kOther;
  Gender gender = Gender::kUnknown;
};

// One row per edge; targets without a profile are classified "other" with
// gender "unknown".
std::vector<ReferenceRow> ClassifyEdges(std::span<const Edge> edges,
                                        const ProfileMap &profiles);

struct GenderReferenceCounts {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t full = 0;
  std::size_t other = 0;

  std::size_t classified() const { return first + last + full; }
};

struct FirstNameRates {
  std::map<Gender, GenderReferenceCounts> counts;
  // first / (first + last + full); genders with no classified reference
  // are absent.
  std::map<Gender, double> rates;
  // rate(female) / rate(male); nullopt when either is missing or male is 0.
  std::optional<double> ratio;
};

FirstNameRates ComputeFirstNameRates(std::span<const ReferenceRow> rows);
FirstNameRates ComputeFirstNameRates(std::span<const Edge> edges,
                                     const ProfileMap &profiles);

// "quote_id<TAB>target_qid<TAB>surface<TAB>form<TAB>gender".
void WriteReferenceTable(const std::filesystem::path &path,
                         std::span<const ReferenceRow> rows);

}  // namespace quotegraph

#endif  // QUOTEGRAPH_NAMEBIAS_HPP_
