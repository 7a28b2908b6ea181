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

#include "quotegraph/entity_link.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <stdexcept>

#include "quotegraph/text.hpp"

namespace quotegraph {
namespace {

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

std::optional<double> ParseDouble(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

// Shortest decimal that round-trips.
std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace

AliasTable AliasTable::Load(const std::filesystem::path &path,
                            LoadReport *report) {
  auto in = OpenInput(path);
  AliasTable table;
  LoadReport local;
  std::string line;
  while (std::getline(in, line)) {
    ++local.lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = SplitTabs(line);
    std::optional<double> prior;
    if (fields.size() == 3) prior = ParseDouble(fields[2]);
    if (fields.size() != 3 || fields[0].empty() || !IsValidQid(fields[1]) ||
        !prior || *prior < 0.0) {
      ++local.malformed;
      continue;
    }
    table.Add(fields[0], fields[1], *prior);
    ++local.entries;
  }
  if (report) *report = local;
  return table;
}

void AliasTable::Add(std::string_view surface, std::string_view qid,
                     double prior) {
  if (!IsValidQid(qid)) throw std::invalid_argument("invalid qid");
  if (!(prior >= 0.0)) throw std::invalid_argument("negative prior");
  Entry &entry = entries_[CaseFold(surface)];
  auto it = std::find_if(entry.candidates.begin(), entry.candidates.end(),
                         [&](const AliasCandidate &c) { return c.qid == qid; });
  if (it != entry.candidates.end()) {
    it->prior = std::max(it->prior, prior);
  } else {
    entry.candidates.push_back({std::string(qid), prior});
  }
  entry.best = 0;
  for (std::size_t i = 1; i < entry.candidates.size(); ++i) {
    const auto &c = entry.candidates[i];
    const auto &b = entry.candidates[entry.best];
    if (c.prior > b.prior || (c.prior == b.prior && c.qid < b.qid)) {
      entry.best = i;
    }
  }
}

std::optional<std::string> AliasTable::Resolve(std::string_view surface) const {
  auto it = entries_.find(CaseFold(surface));
  if (it == entries_.end()) return std::nullopt;
  return it->second.candidates[it->second.best].qid;
}

std::span<const AliasCandidate> AliasTable::Candidates(
    std::string_view surface) const {
  auto it = entries_.find(CaseFold(surface));
  if (it == entries_.end()) return {};
  return it->second.candidates;
}

double StableSum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  long double total = 0.0L;
  for (double v : values) total += v;
  return static_cast<double>(total);
}

std::optional<GlobalAttribution> AttributeQuotation(
    const QuoteRecord &record, const AliasTable &table,
    double min_global_probability) {
  std::map<std::string, std::vector<double>> local;
  for (const auto &context : record.contexts) {
    for (const auto &candidate : context.candidates) {
      if (auto qid = table.Resolve(candidate.surface)) {
        local[*qid].push_back(candidate.probability);
      }
    }
  }
  std::optional<GlobalAttribution> best;
  // std::map iterates in qid order, so a strict '>' keeps the smallest qid.
  for (auto &[qid, probabilities] : local) {
    double total = StableSum(std::move(probabilities));
    if (!best || total > best->global_probability) {
      best = GlobalAttribution{record.quote_id, qid, total};
    }
  }
  if (best && best->global_probability < min_global_probability) {
    return std::nullopt;
  }
  return best;
}

void WriteAttributionsTsv(const std::filesystem::path &path,
                          std::span<const GlobalAttribution> attributions) {
  auto out = OpenOutput(path);
  for (const auto &a : attributions) {
    out << a.quote_id << '\t' << a.speaker_qid << '\t'
        << FormatDouble(a.global_probability) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<GlobalAttribution> ReadAttributionsTsv(
    const std::filesystem::path &path) {
  auto in = OpenInput(path);
  std::vector<GlobalAttribution> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = SplitTabs(line);
    std::optional<double> p;
    if (fields.size() == 3) p = ParseDouble(fields[2]);
    if (!p) {
      throw SchemaError(path.string() + ":" + std::to_string(line_no) +
                        ": malformed attribution row");
    }
    out.push_back({std::string(fields[0]), std::string(fields[1]), *p});
  }
  return out;
}

}  // namespace quotegraph
