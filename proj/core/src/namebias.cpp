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

#include "quotegraph/namebias.hpp"

#include <algorithm>

#include "quotegraph/text.hpp"

namespace quotegraph {
namespace {

bool ContainsSequence(const std::vector<std::string> &haystack,
                      const std::vector<std::string> &needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

bool ContainsAnyName(const std::vector<std::string> &words,
                     const std::set<std::string> &names) {
  for (const auto &name : names) {
    if (ContainsSequence(words, SplitWords(CaseFold(name)))) return true;
  }
  return false;
}

}  // namespace

std::string_view ReferenceFormName(ReferenceForm form) {
  switch (form) {
    case ReferenceForm::kFirst: return "first";
    case ReferenceForm::kLast: return "last";
    case ReferenceForm::kFull: return "full";
    case ReferenceForm::kOther: return "other";
  }
  return "other";
}

ReferenceForm ClassifyReference(std::string_view surface,
                                const EntityProfile &profile) {
  if (profile.given_names.empty() && profile.family_names.empty()) {
    return ReferenceForm::kOther;
  }
  auto words = SplitWords(CaseFold(surface));
  bool given = ContainsAnyName(words, profile.given_names);
  bool family = ContainsAnyName(words, profile.family_names);
  if (given && family) return ReferenceForm::kFull;
  if (given) return ReferenceForm::kFirst;
  if (family) return ReferenceForm::kLast;
  return ReferenceForm::kOther;
}

std::vector<ReferenceRow> ClassifyEdges(std::span<const Edge> edges,
                                        const ProfileMap &profiles) {
  std::vector<ReferenceRow> rows;
  rows.reserve(edges.size());
  for (const auto &e : edges) {
    ReferenceRow row;
    row.quote_id = e.quote_id;
    row.target_qid = e.target_qid;
    row.surface = e.surface;
    if (auto it = profiles.find(e.target_qid); it != profiles.end()) {
      row.form = ClassifyReference(e.surface, it->second);
      row.gender = it->second.gender;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

FirstNameRates ComputeFirstNameRates(std::span<const ReferenceRow> rows) {
  FirstNameRates out;
  for (const auto &r : rows) {
    auto &c = out.counts[r.gender];
    switch (r.form) {
      case ReferenceForm::kFirst: ++c.first; break;
      case ReferenceForm::kLast: ++c.last; break;
      case ReferenceForm::kFull: ++c.full; break;
      case ReferenceForm::kOther: ++c.other; break;
    }
  }
  for (const auto &[gender, c] : out.counts) {
    if (c.classified() == 0) continue;
    out.rates[gender] =
        static_cast<double>(c.first) / static_cast<double>(c.classified());
  }
  auto f = out.counts.find(Gender::kFemale);
  auto m = out.counts.find(Gender::kMale);
  if (f != out.counts.end() && m != out.counts.end() &&
      f->second.classified() > 0 && m->second.first > 0) {
    // Cross-multiplied counts keep exact rational ratios exact.
    out.ratio = (static_cast<double>(f->second.first) *
                 static_cast<double>(m->second.classified())) /
                (static_cast<double>(m->second.first) *
                 static_cast<double>(f->second.classified()));
  }
  return out;
}

FirstNameRates ComputeFirstNameRates(std::span<const Edge> edges,
                                     const ProfileMap &profiles) {
  auto rows = ClassifyEdges(edges, profiles);
  return ComputeFirstNameRates(rows);
}

void WriteReferenceTable(const std::filesystem::path &path,
                         std::span<const ReferenceRow> rows) {
  auto out = OpenOutput(path);
  for (const auto &r : rows) {
    out << r.quote_id << '\t' << r.target_qid << '\t' << r.surface << '\t'
        << ReferenceFormName(r.form) << '\t' << GenderName(r.gender) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace quotegraph
