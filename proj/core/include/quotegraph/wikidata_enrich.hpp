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

// Biographic node attributes derived from Wikidata claims: birth date
// (P569), nationality (P27), gender (P21), party membership (P102) and
// occupation domain (P106 under the P279 hierarchy).

#ifndef QUOTEGRAPH_WIKIDATA_ENRICH_HPP_
#define QUOTEGRAPH_WIKIDATA_ENRICH_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "quotegraph/corpus_io.hpp"
#include "quotegraph/graph_build.hpp"

namespace quotegraph {

inline constexpr std::string_view kFemaleQid = "Q6581072";
inline constexpr std::string_view kMaleQid = "Q6581097";
inline constexpr std::string_view kNonBinaryQid = "Q48270";

enum class Gender { kFemale, kMale, kOther, kUnknown };

std::string_view GenderName(Gender gender);
std::optional<Gender> ParseGender(std::string_view name);

enum class Domain { kArt, kPolitics, kSport, kOther };

std::string_view DomainName(Domain domain);
std::optional<Domain> ParseDomain(std::string_view name);

// Top-level occupations that define each domain.
class DomainTable {
 public:
  // art: artist, creator; politics: politician, lawyer; sport: sportsman.
  static DomainTable Default();

  // Throws std::invalid_argument if `qid` already roots another domain.
  void AddRoot(Domain domain, std::string qid);

  const std::map<Domain, std::set<std::string>> &roots() const {
    return roots_;
  }

 private:
  std::map<Domain, std::set<std::string>> roots_;
};

// Occupation qid -> domains reachable by walking P279 upwards to a root.
class OccupationClosure {
 public:
  // Returns {other} for occupations below no root.
  std::set<Domain> DomainsOf(const std::string &occupation) const;

  std::size_t size() const { return domains_.size(); }

 private:
  friend OccupationClosure BuildOccupationClosure(const SubclassGraph &,
                                                  const DomainTable &);
  std::unordered_map<std::string, std::set<Domain>> domains_;
};

// Breadth-first descent from each root over reversed subclass edges with a
// visited set, so cycles terminate.
OccupationClosure BuildOccupationClosure(const SubclassGraph &hierarchy,
                                         const DomainTable &table);

struct PartyInterval {
  std::string party;
  std::optional<Date> start;  // nullopt = unbounded
  std::optional<Date> end;    // nullopt = unbounded

  bool Contains(const Date &d) const {
    return (!start || *start <= d) && (!end || d <= *end);
  }

  friend bool operator==(const PartyInterval &, const PartyInterval &) = default;
};

struct EntityProfile {
  std::string qid;
  std::string label;
  std::optional<Date> birth_date;
  std::set<std::string> nationalities;
  Gender gender = Gender::kUnknown;
  std::vector<PartyInterval> party_memberships;  // listed order
  std::set<Domain> domains;
  std::set<std::string> given_names;   // case-folded
  std::set<std::string> family_names;  // case-folded

  friend bool operator==(const EntityProfile &, const EntityProfile &) = default;
};

// First listed P569 value.
std::optional<Date> ExtractBirthDate(const WikidataSnapshotRecord &record);

std::set<std::string> ExtractNationalities(
    const WikidataSnapshotRecord &record, const std::set<std::string> &defunct);

Gender ExtractGender(const WikidataSnapshotRecord &record);

// Partial dates become the earliest day they admit.
std::vector<PartyInterval> NormalizeMemberships(
    std::span<const PartyMembershipClaim> claims);

// Party in effect at `date`: the first interval (by effective start, open
// starts first, listed order on ties) containing it; with no dates at all,
// the last listed party; otherwise the latest start not after `date`.
std::optional<std::string> PartyAtDate(std::span<const PartyInterval> intervals,
                                       const Date &date);
std::optional<std::string> PartyAtDate(const WikidataSnapshotRecord &record,
                                       const Date &date);

// Union of occupation domains; art survives only without politics or sport.
std::set<Domain> EntityDomains(const WikidataSnapshotRecord &record,
                               const OccupationClosure &closure);

EntityProfile BuildProfile(const WikidataSnapshotRecord &record,
                           const std::set<std::string> &defunct,
                           const OccupationClosure &closure);

using ProfileMap = std::map<std::string, EntityProfile>;

std::string SerializeProfile(const EntityProfile &profile);
EntityProfile ParseProfile(std::string_view line);

void WriteProfiles(const std::filesystem::path &path, const ProfileMap &profiles);
ProfileMap ReadProfiles(const std::filesystem::path &path);

// "qid, label, birth_date, gender, nationalities, domains, in_degree,
// out_degree" tab-separated, one row per graph node. Nodes missing from the
// snapshot get empty attributes and gender "unknown".
void WriteNodesTsv(const std::filesystem::path &path,
                   std::span<const std::string> nodes,
                   std::span<const Edge> edges, const ProfileMap &profiles);

}  // namespace quotegraph

#endif  // QUOTEGRAPH_WIKIDATA_ENRICH_HPP_
