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

#include "quotegraph/wikidata_enrich.hpp"

#include <algorithm>
#include <deque>
#include <nlohmann/json.hpp>
#include <numeric>
#include <unordered_set>
#include <stdexcept>

#include "quotegraph/text.hpp"

namespace quotegraph {

std::string_view GenderName(Gender gender) {
  switch (gender) {
    case Gender::kFemale: return "female";
    case Gender::kMale: return "male";
    case Gender::kOther: return "other";
    case Gender::kUnknown: return "unknown";
  }
  return "unknown";
}

std::optional<Gender> ParseGender(std::string_view name) {
  for (Gender g : {Gender::kFemale, Gender::kMale, Gender::kOther,
                   Gender::kUnknown}) {
    if (GenderName(g) == name) return g;
  }
  return std::nullopt;
}

std::string_view DomainName(Domain domain) {
  switch (domain) {
    case Domain::kArt: return "art";
    case Domain::kPolitics: return "politics";
    case Domain::kSport: return "sport";
    case Domain::kOther: return "other";
  }
  return "other";
}

std::optional<Domain> ParseDomain(std::string_view name) {
  for (Domain d : {Domain::kArt, Domain::kPolitics, Domain::kSport,
                   Domain::kOther}) {
    if (DomainName(d) == name) return d;
  }
  return std::nullopt;
}

DomainTable DomainTable::Default() {
  DomainTable t;
  t.AddRoot(Domain::kArt, "Q483501");       // artist
  t.AddRoot(Domain::kArt, "Q2500638");      // creator
  t.AddRoot(Domain::kPolitics, "Q82955");   // politician
  t.AddRoot(Domain::kPolitics, "Q185351");  // lawyer
  t.AddRoot(Domain::kSport, "Q50995749");   // sportsman
  return t;
}

void DomainTable::AddRoot(Domain domain, std::string qid) {
  for (const auto &[d, roots] : roots_) {
    if (d != domain && roots.contains(qid)) {
      throw std::invalid_argument(qid + " already roots another domain");
    }
  }
  roots_[domain].insert(std::move(qid));
}

std::set<Domain> OccupationClosure::DomainsOf(
    const std::string &occupation) const {
  auto it = domains_.find(occupation);
  if (it == domains_.end()) return {Domain::kOther};
  return it->second;
}

OccupationClosure BuildOccupationClosure(const SubclassGraph &hierarchy,
                                         const DomainTable &table) {
  // Reverse P279 once: parent -> children, children sorted for stable walks.
  std::unordered_map<std::string, std::vector<std::string>> children;
  for (const auto &[child, parents] : hierarchy.parents()) {
    for (const auto &parent : parents) children[parent].push_back(child);
  }
  for (auto &[parent, list] : children) std::sort(list.begin(), list.end());

  OccupationClosure closure;
  for (const auto &[domain, roots] : table.roots()) {
    std::unordered_set<std::string> visited;
    std::deque<std::string> frontier;
    for (const auto &root : roots) {
      if (visited.insert(root).second) frontier.push_back(root);
    }
    while (!frontier.empty()) {
      std::string current = std::move(frontier.front());
      frontier.pop_front();
      closure.domains_[current].insert(domain);
      auto it = children.find(current);
      if (it == children.end()) continue;
      for (const auto &child : it->second) {
        if (visited.insert(child).second) frontier.push_back(child);
      }
    }
  }
  return closure;
}

std::optional<Date> ExtractBirthDate(const WikidataSnapshotRecord &record) {
  if (record.birth_dates.empty()) return std::nullopt;
  return record.birth_dates.front().Earliest();
}

std::set<std::string> ExtractNationalities(
    const WikidataSnapshotRecord &record, const std::set<std::string> &defunct) {
  std::set<std::string> out;
  for (const auto &country : record.nationalities) {
    if (!defunct.contains(country)) out.insert(country);
  }
  return out;
}

Gender ExtractGender(const WikidataSnapshotRecord &record) {
  std::set<std::string> genders(record.genders.begin(), record.genders.end());
  if (genders.empty()) return Gender::kUnknown;
  if (genders.size() > 1 || genders.contains(std::string(kNonBinaryQid))) {
    return Gender::kOther;
  }
  if (*genders.begin() == kFemaleQid) return Gender::kFemale;
  if (*genders.begin() == kMaleQid) return Gender::kMale;
  return Gender::kOther;
}

std::vector<PartyInterval> NormalizeMemberships(
    std::span<const PartyMembershipClaim> claims) {
  std::vector<PartyInterval> out;
  out.reserve(claims.size());
  for (const auto &c : claims) {
    PartyInterval p;
    p.party = c.party;
    if (c.start) p.start = c.start->Earliest();
    if (c.end) p.end = c.end->Earliest();
    out.push_back(std::move(p));
  }
  return out;
}

std::optional<std::string> PartyAtDate(std::span<const PartyInterval> intervals,
                                       const Date &date) {
  if (intervals.empty()) return std::nullopt;
  bool any_dates = std::any_of(intervals.begin(), intervals.end(),
                               [](const auto &p) { return p.start || p.end; });
  if (!any_dates) return intervals.back().party;

  std::vector<std::size_t> order(intervals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // An open start sorts before every date.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return intervals[a].start < intervals[b].start;
  });
  for (std::size_t i : order) {
    if (intervals[i].Contains(date)) return intervals[i].party;
  }
  const PartyInterval *latest = nullptr;
  for (std::size_t i : order) {
    const auto &p = intervals[i];
    if (p.start && *p.start <= date) latest = &p;
  }
  if (latest) return latest->party;
  return std::nullopt;
}

std::optional<std::string> PartyAtDate(const WikidataSnapshotRecord &record,
                                       const Date &date) {
  auto intervals = NormalizeMemberships(record.party_memberships);
  return PartyAtDate(intervals, date);
}

std::set<Domain> EntityDomains(const WikidataSnapshotRecord &record,
                               const OccupationClosure &closure) {
  std::set<Domain> out;
  for (const auto &occupation : record.occupations) {
    auto domains = closure.DomainsOf(occupation);
    out.insert(domains.begin(), domains.end());
  }
  if (out.contains(Domain::kPolitics) || out.contains(Domain::kSport)) {
    out.erase(Domain::kArt);
  }
  return out;
}

EntityProfile BuildProfile(const WikidataSnapshotRecord &record,
                           const std::set<std::string> &defunct,
                           const OccupationClosure &closure) {
  EntityProfile p;
  p.qid = record.qid;
  p.label = record.label;
  p.birth_date = ExtractBirthDate(record);
  p.nationalities = ExtractNationalities(record, defunct);
  p.gender = ExtractGender(record);
  p.party_memberships = NormalizeMemberships(record.party_memberships);
  p.domains = EntityDomains(record, closure);
  for (const auto &n : record.given_names) p.given_names.insert(CaseFold(n));
  for (const auto &n : record.family_names) p.family_names.insert(CaseFold(n));
  return p;
}

namespace {

nlohmann::ordered_json OptionalDate(const std::optional<Date> &d) {
  return d ? nlohmann::ordered_json(d->ToString()) : nlohmann::ordered_json();
}

std::optional<Date> ReadOptionalDate(const nlohmann::json &v) {
  if (v.is_null()) return std::nullopt;
  auto d = Date::Parse(v.get<std::string>());
  if (!d) throw SchemaError("invalid date in profile");
  return d;
}

template <typename Set, typename Fn>
std::string PipeJoin(const Set &values, Fn &&name) {
  std::string out;
  for (const auto &v : values) {
    if (!out.empty()) out.push_back('|');
    out += name(v);
  }
  return out;
}

}  // namespace

std::string SerializeProfile(const EntityProfile &p) {
  nlohmann::ordered_json doc;
  doc["qid"] = p.qid;
  doc["label"] = p.label;
  doc["birthDate"] = OptionalDate(p.birth_date);
  doc["nationalities"] = p.nationalities;
  doc["gender"] = GenderName(p.gender);
  nlohmann::ordered_json parties = nlohmann::ordered_json::array();
  for (const auto &m : p.party_memberships) {
    parties.push_back(
        {{"party", m.party}, {"start", OptionalDate(m.start)}, {"end", OptionalDate(m.end)}});
  }
  doc["partyMemberships"] = std::move(parties);
  nlohmann::ordered_json domains = nlohmann::ordered_json::array();
  for (Domain d : p.domains) domains.push_back(DomainName(d));
  doc["domains"] = std::move(domains);
  doc["givenNames"] = p.given_names;
  doc["familyNames"] = p.family_names;
  return doc.dump();
}

EntityProfile ParseProfile(std::string_view line) {
  auto doc = nlohmann::json::parse(line.begin(), line.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw SchemaError("malformed profile record");
  }
  try {
    EntityProfile p;
    p.qid = doc.at("qid").get<std::string>();
    p.label = doc.at("label").get<std::string>();
    p.birth_date = ReadOptionalDate(doc.at("birthDate"));
    p.nationalities = doc.at("nationalities").get<std::set<std::string>>();
    auto gender = ParseGender(doc.at("gender").get<std::string>());
    if (!gender) throw SchemaError("unknown gender in profile");
    p.gender = *gender;
    for (const auto &jm : doc.at("partyMemberships")) {
      p.party_memberships.push_back({jm.at("party").get<std::string>(),
                                     ReadOptionalDate(jm.at("start")),
                                     ReadOptionalDate(jm.at("end"))});
    }
    for (const auto &jd : doc.at("domains")) {
      auto d = ParseDomain(jd.get<std::string>());
      if (!d) throw SchemaError("unknown domain in profile");
      p.domains.insert(*d);
    }
    p.given_names = doc.at("givenNames").get<std::set<std::string>>();
    p.family_names = doc.at("familyNames").get<std::set<std::string>>();
    return p;
  } catch (const nlohmann::json::exception &e) {
    throw SchemaError(std::string("profile record: ") + e.what());
  }
}

void WriteProfiles(const std::filesystem::path &path,
                   const ProfileMap &profiles) {
  auto out = OpenOutput(path);
  for (const auto &[qid, p] : profiles) out << SerializeProfile(p) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

ProfileMap ReadProfiles(const std::filesystem::path &path) {
  auto in = OpenInput(path);
  ProfileMap out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto p = ParseProfile(line);
    std::string qid = p.qid;
    out.insert_or_assign(std::move(qid), std::move(p));
  }
  return out;
}

void WriteNodesTsv(const std::filesystem::path &path,
                   std::span<const std::string> nodes,
                   std::span<const Edge> edges, const ProfileMap &profiles) {
  std::unordered_map<std::string_view, std::pair<std::size_t, std::size_t>> degree;
  for (const auto &e : edges) {
    ++degree[e.target_qid].first;
    ++degree[e.speaker_qid].second;
  }
  auto out = OpenOutput(path);
  for (const auto &qid : nodes) {
    auto [in_deg, out_deg] = degree[qid];
    auto it = profiles.find(qid);
    if (it == profiles.end()) {
      out << qid << "\t\t\t" << GenderName(Gender::kUnknown) << "\t\t\t"
          << in_deg << '\t' << out_deg << '\n';
      continue;
    }
    const auto &p = it->second;
    out << qid << '\t' << p.label << '\t'
        << (p.birth_date ? p.birth_date->ToString() : std::string()) << '\t'
        << GenderName(p.gender) << '\t'
        << PipeJoin(p.nationalities, [](const std::string &s) { return s; })
        << '\t'
        << PipeJoin(p.domains, [](Domain d) { return std::string(DomainName(d)); })
        << '\t' << in_deg << '\t' << out_deg << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace quotegraph
