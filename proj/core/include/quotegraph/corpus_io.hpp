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

// Canonical on-disk formats and their validating stream parsers.
//
// Articles file: one JSON object per line,
//   {"articleUID": str, "url": str, "date": "YYYY-MM-DD",
//    "tokens": [str],
//    "quotations": [{"quoteID": str, "startTokenIndex": int,
//                    "candidates": [{"surface": str, "startToken": int,
//                                    "endToken": int,
//                                    "probability": real}]}],
//    "mentions": [{"startToken": int, "endTokenExclusive": int,
//                  "surface": str, "entityType": str}]}
// Candidate token offsets are optional.
//
// Snapshot file: one JSON object per line,
//   {"qid": "Q76", "label": str, "birthDates": [date], "nationalities": [qid],
//    "genders": [qid], "occupations": [qid], "givenNames": [str],
//    "familyNames": [str],
//    "partyMemberships": [{"party": qid, "start": date|null,
//                          "end": date|null, "precision": "day"|"month"|"year"}]}
// where a date may be YYYY, YYYY-MM or YYYY-MM-DD.
//
// Hierarchy file: "child<TAB>parent" QID pairs (P279), one per line.
// QID list files (defunct countries): one QID per line.

#ifndef QUOTEGRAPH_CORPUS_IO_HPP_
#define QUOTEGRAPH_CORPUS_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "quotegraph/date.hpp"

namespace quotegraph {

// Unreadable or unwritable files. Always fatal for the stage.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A record that violates the schema. Callers log and skip it.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpeakerCandidate {
  std::string surface;
  double probability = 0.0;
  std::optional<std::size_t> start_token;
  std::optional<std::size_t> end_token;

  friend bool operator==(const SpeakerCandidate &,
                         const SpeakerCandidate &) = default;
};

struct QuoteOccurrence {
  std::string quote_id;
  // First token inside the quote, right after the opening mark.
  std::size_t start_index = 0;
  std::vector<SpeakerCandidate> candidates;

  friend bool operator==(const QuoteOccurrence &,
                         const QuoteOccurrence &) = default;
};

inline constexpr std::string_view kPersonType = "PERSON";

struct MentionSpan {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
  std::string surface;
  std::string entity_type{kPersonType};

  bool is_person() const { return entity_type == kPersonType; }

  friend bool operator==(const MentionSpan &, const MentionSpan &) = default;
};

struct Article {
  std::string article_uid;
  std::string url;
  Date date;
  std::vector<std::string> tokens;
  std::vector<QuoteOccurrence> quotations;
  std::vector<MentionSpan> mentions;

  friend bool operator==(const Article &, const Article &) = default;
};

// Parses and validates one articles-file line. Throws SchemaError.
Article ParseArticle(std::string_view line);

// Checks the Article invariants; throws SchemaError naming the first one
// violated.
void ValidateArticle(const Article &article);

// Single-line JSON serialization accepted by ParseArticle.
std::string SerializeArticle(const Article &article);

struct RejectedLine {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

struct LoadReport {
  std::size_t lines = 0;
  std::size_t accepted = 0;
  std::vector<RejectedLine> rejects;
};

// Streams an articles file in batches. Lines in a batch are parsed on
// `threads` workers; accepted articles keep file order.
class ArticleReader {
 public:
  explicit ArticleReader(const std::filesystem::path &path, int threads = 1);

  // Replaces *batch with up to `max_lines` lines' worth of articles.
  // Returns false once the file is exhausted and nothing was read.
  bool NextBatch(std::vector<Article> *batch, std::size_t max_lines = 4096);

  const LoadReport &report() const { return report_; }

 private:
  std::ifstream in_;
  int threads_;
  LoadReport report_;
};

// Loads a whole articles file. Throws IoError if it cannot be opened.
std::vector<Article> LoadArticles(const std::filesystem::path &path,
                                  LoadReport *report = nullptr,
                                  int threads = 1);

// Writes "line<TAB>reason" rows.
void WriteRejectsLog(const std::filesystem::path &path,
                     const std::vector<RejectedLine> &rejects);

bool IsValidQid(std::string_view text);

struct PartyMembershipClaim {
  std::string party;
  std::optional<PartialDate> start;
  std::optional<PartialDate> end;

  friend bool operator==(const PartyMembershipClaim &,
                         const PartyMembershipClaim &) = default;
};

struct WikidataSnapshotRecord {
  std::string qid;
  std::string label;
  std::vector<PartialDate> birth_dates;
  std::vector<std::string> nationalities;
  std::vector<std::string> genders;
  std::vector<PartyMembershipClaim> party_memberships;
  std::vector<std::string> occupations;
  std::vector<std::string> given_names;
  std::vector<std::string> family_names;

  friend bool operator==(const WikidataSnapshotRecord &,
                         const WikidataSnapshotRecord &) = default;
};

WikidataSnapshotRecord ParseSnapshotRecord(std::string_view line);
std::string SerializeSnapshotRecord(const WikidataSnapshotRecord &record);

using Snapshot = std::unordered_map<std::string, WikidataSnapshotRecord>;

struct SnapshotReport {
  std::size_t lines = 0;
  std::size_t duplicates = 0;
  // Memberships whose start lies after their end; dropped from the record.
  std::size_t inverted_memberships = 0;
  std::vector<RejectedLine> rejects;
};

// Last record wins on a duplicate qid.
Snapshot LoadSnapshot(const std::filesystem::path &path,
                      SnapshotReport *report = nullptr);

// child -> parents over P279. Parents are kept sorted and unique.
class SubclassGraph {
 public:
  // Returns false for self-edges, which are not stored.
  bool AddEdge(const std::string &child, const std::string &parent);

  const std::vector<std::string> &ParentsOf(const std::string &child) const;
  const std::unordered_map<std::string, std::vector<std::string>> &parents()
      const {
    return parents_;
  }
  std::size_t edge_count() const { return edge_count_; }

 private:
  std::unordered_map<std::string, std::vector<std::string>> parents_;
  std::size_t edge_count_ = 0;
};

struct HierarchyReport {
  std::size_t lines = 0;
  std::size_t malformed = 0;
  std::size_t self_edges = 0;
};

SubclassGraph LoadHierarchy(const std::filesystem::path &path,
                            HierarchyReport *report = nullptr);

// One QID per line; blank lines and '#' comments ignored.
std::set<std::string> LoadQidSet(const std::filesystem::path &path);

// Opens for reading or throws IoError.
std::ifstream OpenInput(const std::filesystem::path &path);
// Opens for writing (truncating) or throws IoError.
std::ofstream OpenOutput(const std::filesystem::path &path);

}  // namespace quotegraph

#endif  // QUOTEGRAPH_CORPUS_IO_HPP_
