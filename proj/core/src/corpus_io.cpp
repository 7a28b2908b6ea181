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

#include "quotegraph/corpus_io.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <sstream>

#include "quotegraph/parallel.hpp"
#include "quotegraph/text.hpp"

namespace quotegraph {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void Fail(const std::string &what) { throw SchemaError(what); }

const json &Field(const json &obj, const char *name) {
  auto it = obj.find(name);
  if (it == obj.end()) Fail(std::string("missing field '") + name + "'");
  return *it;
}

std::string StringField(const json &obj, const char *name) {
  const json &v = Field(obj, name);
  if (!v.is_string()) Fail(std::string("field '") + name + "' is not a string");
  return v.get<std::string>();
}

std::size_t IndexField(const json &obj, const char *name) {
  const json &v = Field(obj, name);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    Fail(std::string("field '") + name + "' is not a non-negative integer");
  }
  return v.get<std::size_t>();
}

const json &ArrayField(const json &obj, const char *name) {
  const json &v = Field(obj, name);
  if (!v.is_array()) Fail(std::string("field '") + name + "' is not an array");
  return v;
}

// Absent or null arrays read as empty.
std::vector<std::string> OptionalStrings(const json &obj, const char *name) {
  std::vector<std::string> out;
  auto it = obj.find(name);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) Fail(std::string("field '") + name + "' is not an array");
  for (const auto &v : *it) {
    if (!v.is_string()) Fail(std::string("field '") + name + "' holds a non-string");
    out.push_back(v.get<std::string>());
  }
  return out;
}

json ParseJsonLine(std::string_view line) {
  json doc = json::parse(line.begin(), line.end(), nullptr, false);
  if (doc.is_discarded()) Fail("malformed JSON");
  if (!doc.is_object()) Fail("record is not an object");
  return doc;
}

std::optional<PartialDate> OptionalPartialDate(
    const json &obj, const char *name, std::optional<DatePrecision> precision) {
  auto it = obj.find(name);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) Fail(std::string("field '") + name + "' is not a date");
  auto parsed = PartialDate::Parse(it->get<std::string>(), precision);
  if (!parsed) Fail(std::string("field '") + name + "' is not a valid date");
  return parsed;
}

}  // namespace

void ValidateArticle(const Article &article) {
  const std::size_t n = article.tokens.size();
  std::size_t previous_start = 0;
  bool first = true;
  for (const auto &q : article.quotations) {
    if (q.quote_id.empty()) Fail("empty quoteID");
    if (q.start_index == 0 || q.start_index >= n) {
      Fail("quotation " + q.quote_id + " start index out of bounds");
    }
    if (article.tokens[q.start_index - 1] != kOpenQuoteMark) {
      Fail("quotation " + q.quote_id + " does not follow an opening mark");
    }
    if (!first && q.start_index <= previous_start) {
      Fail("quotation start indices not strictly increasing");
    }
    first = false;
    previous_start = q.start_index;
    for (const auto &c : q.candidates) {
      if (!(c.probability >= 0.0 && c.probability <= 1.0)) {
        Fail("candidate probability outside [0,1]");
      }
      if ((c.start_token && *c.start_token >= n) ||
          (c.end_token && *c.end_token > n) ||
          (c.start_token && c.end_token && *c.start_token > *c.end_token)) {
        Fail("candidate span out of bounds");
      }
    }
  }
  for (const auto &m : article.mentions) {
    if (m.start >= m.end) Fail("mention span is empty or inverted");
    if (m.end > n) Fail("mention span exceeds token count");
    std::span<const std::string> slice(article.tokens.data() + m.start,
                                       m.end - m.start);
    if (JoinTokens(slice) != m.surface) {
      Fail("mention surface does not match its token span");
    }
  }
}

Article ParseArticle(std::string_view line) {
  json doc = ParseJsonLine(line);
  Article a;
  a.article_uid = StringField(doc, "articleUID");
  if (a.article_uid.empty()) Fail("empty articleUID");
  a.url = StringField(doc, "url");
  auto date = Date::Parse(StringField(doc, "date"));
  if (!date) Fail("date is not a valid ISO-8601 calendar date");
  a.date = *date;
  for (const auto &t : ArrayField(doc, "tokens")) {
    if (!t.is_string()) Fail("non-string token");
    a.tokens.push_back(t.get<std::string>());
  }
  for (const auto &jq : ArrayField(doc, "quotations")) {
    if (!jq.is_object()) Fail("quotation is not an object");
    QuoteOccurrence q;
    q.quote_id = StringField(jq, "quoteID");
    q.start_index = IndexField(jq, "startTokenIndex");
    for (const auto &jc : ArrayField(jq, "candidates")) {
      if (!jc.is_object()) Fail("candidate is not an object");
      SpeakerCandidate c;
      c.surface = StringField(jc, "surface");
      const json &p = Field(jc, "probability");
      if (!p.is_number()) Fail("candidate probability is not a number");
      c.probability = p.get<double>();
      if (jc.contains("startToken") && !jc["startToken"].is_null()) {
        c.start_token = IndexField(jc, "startToken");
      }
      if (jc.contains("endToken") && !jc["endToken"].is_null()) {
        c.end_token = IndexField(jc, "endToken");
      }
      q.candidates.push_back(std::move(c));
    }
    a.quotations.push_back(std::move(q));
  }
  for (const auto &jm : ArrayField(doc, "mentions")) {
    if (!jm.is_object()) Fail("mention is not an object");
    MentionSpan m;
    m.start = IndexField(jm, "startToken");
    m.end = IndexField(jm, "endTokenExclusive");
    m.surface = StringField(jm, "surface");
    m.entity_type = StringField(jm, "entityType");
    a.mentions.push_back(std::move(m));
  }
  ValidateArticle(a);
  return a;
}

std::string SerializeArticle(const Article &article) {
  ordered_json doc;
  doc["articleUID"] = article.article_uid;
  doc["url"] = article.url;
  doc["date"] = article.date.ToString();
  doc["tokens"] = article.tokens;
  ordered_json quotations = ordered_json::array();
  for (const auto &q : article.quotations) {
    ordered_json jq;
    jq["quoteID"] = q.quote_id;
    jq["startTokenIndex"] = q.start_index;
    ordered_json candidates = ordered_json::array();
    for (const auto &c : q.candidates) {
      ordered_json jc;
      jc["surface"] = c.surface;
      if (c.start_token) jc["startToken"] = *c.start_token;
      if (c.end_token) jc["endToken"] = *c.end_token;
      jc["probability"] = c.probability;
      candidates.push_back(std::move(jc));
    }
    jq["candidates"] = std::move(candidates);
    quotations.push_back(std::move(jq));
  }
  doc["quotations"] = std::move(quotations);
  ordered_json mentions = ordered_json::array();
  for (const auto &m : article.mentions) {
    mentions.push_back({{"startToken", m.start},
                        {"endTokenExclusive", m.end},
                        {"surface", m.surface},
                        {"entityType", m.entity_type}});
  }
  doc["mentions"] = std::move(mentions);
  return doc.dump();
}

std::ifstream OpenInput(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream OpenOutput(const std::filesystem::path &path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

ArticleReader::ArticleReader(const std::filesystem::path &path, int threads)
    : in_(OpenInput(path)), threads_(threads) {}

bool ArticleReader::NextBatch(std::vector<Article> *batch,
                              std::size_t max_lines) {
  batch->clear();
  std::vector<std::string> lines;
  std::string line;
  while (lines.size() < max_lines && std::getline(in_, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  if (lines.empty()) return false;

  std::vector<std::optional<Article>> parsed(lines.size());
  std::vector<std::string> errors(lines.size());
  ParallelFor(lines.size(), threads_, [&](std::size_t i) {
    try {
      parsed[i] = ParseArticle(lines[i]);
    } catch (const SchemaError &e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < lines.size(); ++i) {
    ++report_.lines;
    if (lines[i].empty()) {
      report_.rejects.push_back({report_.lines, "empty line"});
    } else if (parsed[i]) {
      ++report_.accepted;
      batch->push_back(std::move(*parsed[i]));
    } else {
      report_.rejects.push_back({report_.lines, errors[i]});
    }
  }
  return true;
}

std::vector<Article> LoadArticles(const std::filesystem::path &path,
                                  LoadReport *report, int threads) {
  ArticleReader reader(path, threads);
  std::vector<Article> out;
  std::vector<Article> batch;
  while (reader.NextBatch(&batch)) {
    std::move(batch.begin(), batch.end(), std::back_inserter(out));
  }
  if (report) *report = reader.report();
  return out;
}

void WriteRejectsLog(const std::filesystem::path &path,
                     const std::vector<RejectedLine> &rejects) {
  auto out = OpenOutput(path);
  for (const auto &r : rejects) out << r.line << '\t' << r.reason << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

bool IsValidQid(std::string_view text) {
  if (text.size() < 2 || text[0] != 'Q') return false;
  return std::all_of(text.begin() + 1, text.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

WikidataSnapshotRecord ParseSnapshotRecord(std::string_view line) {
  json doc = ParseJsonLine(line);
  WikidataSnapshotRecord r;
  r.qid = StringField(doc, "qid");
  if (!IsValidQid(r.qid)) Fail("invalid qid '" + r.qid + "'");
  if (auto it = doc.find("label"); it != doc.end() && !it->is_null()) {
    if (!it->is_string()) Fail("label is not a string");
    r.label = it->get<std::string>();
  }
  for (const auto &s : OptionalStrings(doc, "birthDates")) {
    auto d = PartialDate::Parse(s);
    if (!d) Fail("invalid birth date '" + s + "'");
    r.birth_dates.push_back(*d);
  }
  auto qids = [&](const char *name) {
    auto values = OptionalStrings(doc, name);
    for (const auto &v : values) {
      if (!IsValidQid(v)) Fail(std::string("invalid qid in '") + name + "'");
    }
    return values;
  };
  r.nationalities = qids("nationalities");
  r.genders = qids("genders");
  r.occupations = qids("occupations");
  r.given_names = OptionalStrings(doc, "givenNames");
  r.family_names = OptionalStrings(doc, "familyNames");
  if (auto it = doc.find("partyMemberships");
      it != doc.end() && !it->is_null()) {
    if (!it->is_array()) Fail("partyMemberships is not an array");
    for (const auto &jm : *it) {
      if (!jm.is_object()) Fail("membership is not an object");
      PartyMembershipClaim m;
      m.party = StringField(jm, "party");
      if (!IsValidQid(m.party)) Fail("invalid party qid");
      std::optional<DatePrecision> precision;
      if (auto p = jm.find("precision"); p != jm.end() && !p->is_null()) {
        if (!p->is_string()) Fail("precision is not a string");
        precision = ParsePrecision(p->get<std::string>());
        if (!precision) Fail("unknown precision");
      }
      m.start = OptionalPartialDate(jm, "start", precision);
      m.end = OptionalPartialDate(jm, "end", precision);
      r.party_memberships.push_back(std::move(m));
    }
  }
  return r;
}

std::string SerializeSnapshotRecord(const WikidataSnapshotRecord &r) {
  ordered_json doc;
  doc["qid"] = r.qid;
  doc["label"] = r.label;
  ordered_json births = ordered_json::array();
  for (const auto &d : r.birth_dates) births.push_back(d.ToString());
  doc["birthDates"] = std::move(births);
  doc["nationalities"] = r.nationalities;
  doc["genders"] = r.genders;
  ordered_json parties = ordered_json::array();
  for (const auto &m : r.party_memberships) {
    ordered_json jm;
    jm["party"] = m.party;
    jm["start"] = m.start ? ordered_json(m.start->ToString()) : ordered_json();
    jm["end"] = m.end ? ordered_json(m.end->ToString()) : ordered_json();
    parties.push_back(std::move(jm));
  }
  doc["partyMemberships"] = std::move(parties);
  doc["occupations"] = r.occupations;
  doc["givenNames"] = r.given_names;
  doc["familyNames"] = r.family_names;
  return doc.dump();
}

Snapshot LoadSnapshot(const std::filesystem::path &path,
                      SnapshotReport *report) {
  auto in = OpenInput(path);
  Snapshot out;
  SnapshotReport local;
  std::string line;
  while (std::getline(in, line)) {
    ++local.lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      auto record = ParseSnapshotRecord(line);
      auto &claims = record.party_memberships;
      auto inverted = std::remove_if(claims.begin(), claims.end(), [](auto &m) {
        return m.start && m.end && m.end->Earliest() < m.start->Earliest();
      });
      local.inverted_memberships +=
          static_cast<std::size_t>(claims.end() - inverted);
      claims.erase(inverted, claims.end());
      std::string qid = record.qid;
      auto [it, inserted] = out.insert_or_assign(qid, std::move(record));
      if (!inserted) ++local.duplicates;
    } catch (const SchemaError &e) {
      local.rejects.push_back({local.lines, e.what()});
    }
  }
  if (report) *report = std::move(local);
  return out;
}

bool SubclassGraph::AddEdge(const std::string &child,
                            const std::string &parent) {
  if (child == parent) return false;
  auto &parents = parents_[child];
  auto it = std::lower_bound(parents.begin(), parents.end(), parent);
  if (it != parents.end() && *it == parent) return true;
  parents.insert(it, parent);
  ++edge_count_;
  return true;
}

const std::vector<std::string> &SubclassGraph::ParentsOf(
    const std::string &child) const {
  static const std::vector<std::string> kNone;
  auto it = parents_.find(child);
  return it == parents_.end() ? kNone : it->second;
}

SubclassGraph LoadHierarchy(const std::filesystem::path &path,
                            HierarchyReport *report) {
  auto in = OpenInput(path);
  SubclassGraph graph;
  HierarchyReport local;
  std::string line;
  while (std::getline(in, line)) {
    ++local.lines;
    auto fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != 2 || !IsValidQid(fields[0]) ||
        !IsValidQid(fields[1])) {
      ++local.malformed;
      continue;
    }
    if (!graph.AddEdge(fields[0], fields[1])) ++local.self_edges;
  }
  if (report) *report = local;
  return graph;
}

std::set<std::string> LoadQidSet(const std::filesystem::path &path) {
  auto in = OpenInput(path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto fields = SplitWhitespace(line);
    if (fields.empty() || fields[0][0] == '#') continue;
    if (IsValidQid(fields[0])) out.insert(fields[0]);
  }
  return out;
}

}  // namespace quotegraph
