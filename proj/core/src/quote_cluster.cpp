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

#include "quotegraph/quote_cluster.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "json_codec.hpp"
#include "quotegraph/parallel.hpp"

namespace quotegraph {
namespace {

// Length-prefixed concatenation, so distinct windows never share a key.
std::string WindowKey(std::span<const std::string> words) {
  std::string key;
  for (const auto &w : words) {
    key += std::to_string(w.size());
    key.push_back(':');
    key += w;
  }
  return key;
}

std::vector<std::string> WindowKeys(std::span<const std::string> tokens,
                                    const PreprocessConfig &cfg) {
  auto words = ContentWords(tokens);
  std::size_t len = static_cast<std::size_t>(cfg.min_shared_substring);
  std::vector<std::string> keys;
  if (words.size() < len) return keys;
  keys.reserve(words.size() - len + 1);
  for (std::size_t i = 0; i + len <= words.size(); ++i) {
    keys.push_back(WindowKey(std::span<const std::string>(&words[i], len)));
  }
  return keys;
}

bool CandidateLess(const SpeakerCandidate &a, const SpeakerCandidate &b) {
  return std::tie(a.surface, a.probability) < std::tie(b.surface, b.probability);
}

}  // namespace

std::vector<QuoteShingle> Shingles(std::string_view quote_id,
                                   std::span<const std::string> tokens,
                                   const PreprocessConfig &cfg) {
  auto words = ContentWords(tokens);
  std::size_t len = static_cast<std::size_t>(cfg.min_shared_substring);
  std::vector<QuoteShingle> out;
  if (words.size() < len) return out;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i + len <= words.size(); ++i) {
    std::span<const std::string> window(&words[i], len);
    if (!seen.insert(WindowKey(window)).second) continue;
    out.push_back({{window.begin(), window.end()}, std::string(quote_id)});
  }
  return out;
}

bool ContextLess(const QuoteContext &a, const QuoteContext &b) {
  auto key = [](const QuoteContext &c) {
    return std::tie(c.article_uid, c.url, c.date, c.tokens, c.mentions);
  };
  if (key(a) < key(b)) return true;
  if (key(b) < key(a)) return false;
  return std::lexicographical_compare(a.candidates.begin(), a.candidates.end(),
                                      b.candidates.begin(), b.candidates.end(),
                                      CandidateLess);
}

std::vector<UniqueQuote> CollectQuotes(std::vector<QuoteContext> contexts) {
  std::map<std::string, std::vector<QuoteContext>> by_id;
  for (auto &c : contexts) {
    std::string id = c.quote_id;
    by_id[id].push_back(std::move(c));
  }
  std::vector<UniqueQuote> out;
  out.reserve(by_id.size());
  for (auto &[id, list] : by_id) {
    std::sort(list.begin(), list.end(), ContextLess);
    UniqueQuote q;
    q.quote_id = id;
    std::size_t best = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::size_t n = ContentWords(list[i].tokens).size();
      if (i == 0 || n > q.content_word_count) {
        best = i;
        q.content_word_count = n;
      }
    }
    q.tokens = list[best].tokens;
    q.contexts = std::move(list);
    out.push_back(std::move(q));
  }
  return out;
}

std::string SelectRepresentative(std::span<const QuoteLength> members) {
  if (members.empty()) throw std::invalid_argument("empty quote group");
  const QuoteLength *best = &members[0];
  for (const auto &m : members.subspan(1)) {
    if (m.content_words > best->content_words ||
        (m.content_words == best->content_words && m.quote_id < best->quote_id)) {
      best = &m;
    }
  }
  return best->quote_id;
}

DisjointSet::DisjointSet(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSet::Find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    std::size_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool DisjointSet::Union(std::size_t x, std::size_t y) {
  x = Find(x);
  y = Find(y);
  if (x == y) return false;
  if (rank_[x] < rank_[y]) std::swap(x, y);
  parent_[y] = x;
  if (rank_[x] == rank_[y]) ++rank_[x];
  return true;
}

std::vector<QuoteGroup> GroupQuotations(std::span<const UniqueQuote> quotes,
                                        const PreprocessConfig &cfg,
                                        int threads) {
  std::vector<std::vector<std::string>> keys(quotes.size());
  ParallelFor(quotes.size(), threads, [&](std::size_t i) {
    keys[i] = WindowKeys(quotes[i].tokens, cfg);
  });

  DisjointSet sets(quotes.size());
  std::unordered_map<std::string, std::size_t> first_owner;
  for (std::size_t i = 0; i < quotes.size(); ++i) {
    for (auto &key : keys[i]) {
      auto [it, inserted] = first_owner.try_emplace(std::move(key), i);
      if (!inserted) sets.Union(it->second, i);
    }
    keys[i].clear();
    keys[i].shrink_to_fit();
  }

  std::unordered_map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t i = 0; i < quotes.size(); ++i) {
    by_root[sets.Find(i)].push_back(i);
  }
  std::vector<QuoteGroup> groups;
  groups.reserve(by_root.size());
  for (auto &[root, indices] : by_root) {
    QuoteGroup g;
    std::vector<QuoteLength> lengths;
    for (std::size_t i : indices) {
      g.members.push_back(quotes[i].quote_id);
      lengths.push_back({quotes[i].quote_id, quotes[i].content_word_count});
    }
    std::sort(g.members.begin(), g.members.end());
    g.representative = SelectRepresentative(lengths);
    groups.push_back(std::move(g));
  }
  std::sort(groups.begin(), groups.end(),
            [](const QuoteGroup &a, const QuoteGroup &b) {
              return a.members.front() < b.members.front();
            });
  return groups;
}

QuoteRecord MergeGroupContexts(const QuoteGroup &group,
                               std::span<const UniqueQuote> quotes) {
  auto find = [&](const std::string &id) -> const UniqueQuote & {
    auto it = std::lower_bound(
        quotes.begin(), quotes.end(), id,
        [](const UniqueQuote &q, const std::string &v) { return q.quote_id < v; });
    if (it == quotes.end() || it->quote_id != id) {
      throw std::invalid_argument("group member " + id + " not found");
    }
    return *it;
  };
  QuoteRecord record;
  record.quote_id = group.representative;
  record.members = group.members;
  record.tokens = find(group.representative).tokens;
  for (const auto &id : group.members) {
    const auto &q = find(id);
    record.contexts.insert(record.contexts.end(), q.contexts.begin(),
                           q.contexts.end());
  }
  std::sort(record.contexts.begin(), record.contexts.end(), ContextLess);
  for (std::size_t i = 0; i < record.contexts.size(); ++i) {
    if (i == 0 || record.contexts[i].date < record.earliest_date) {
      record.earliest_date = record.contexts[i].date;
    }
  }
  return record;
}

std::string SerializeRecord(const QuoteRecord &r) {
  nlohmann::ordered_json doc;
  doc["quoteID"] = r.quote_id;
  doc["members"] = r.members;
  doc["tokens"] = r.tokens;
  doc["earliestDate"] = r.earliest_date.ToString();
  nlohmann::ordered_json contexts = nlohmann::ordered_json::array();
  for (const auto &c : r.contexts) contexts.push_back(internal::ContextToJson(c));
  doc["contexts"] = std::move(contexts);
  return doc.dump();
}

QuoteRecord ParseRecord(std::string_view line) {
  auto doc = nlohmann::json::parse(line.begin(), line.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw SchemaError("malformed quote record");
  }
  try {
    QuoteRecord r;
    r.quote_id = doc.at("quoteID").get<std::string>();
    r.members = doc.at("members").get<std::vector<std::string>>();
    r.tokens = doc.at("tokens").get<std::vector<std::string>>();
    auto date = Date::Parse(doc.at("earliestDate").get<std::string>());
    if (!date) throw SchemaError("invalid earliestDate");
    r.earliest_date = *date;
    for (const auto &jc : doc.at("contexts")) {
      r.contexts.push_back(internal::ContextFromJson(jc));
    }
    return r;
  } catch (const nlohmann::json::exception &e) {
    throw SchemaError(std::string("quote record: ") + e.what());
  }
}

void WriteGroupsTsv(const std::filesystem::path &path,
                    std::span<const QuoteGroup> groups) {
  std::vector<std::pair<std::string_view, std::string_view>> rows;
  for (const auto &g : groups) {
    for (const auto &m : g.members) rows.emplace_back(m, g.representative);
  }
  std::sort(rows.begin(), rows.end());
  auto out = OpenOutput(path);
  for (const auto &[member, rep] : rows) out << member << '\t' << rep << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<QuoteRecord> ClusterContexts(std::vector<QuoteContext> contexts,
                                         const PreprocessConfig &cfg,
                                         int threads,
                                         std::vector<QuoteGroup> *groups_out,
                                         ClusterStats *stats) {
  ClusterStats local;
  local.contexts = contexts.size();
  auto quotes = CollectQuotes(std::move(contexts));
  local.unique_quotes = quotes.size();
  auto groups = GroupQuotations(quotes, cfg, threads);
  local.groups = groups.size();
  local.merged_quotes = quotes.size() - groups.size();

  std::vector<QuoteRecord> records(groups.size());
  ParallelFor(groups.size(), threads, [&](std::size_t i) {
    records[i] = MergeGroupContexts(groups[i], quotes);
  });
  std::sort(records.begin(), records.end(),
            [](const QuoteRecord &a, const QuoteRecord &b) {
              return a.quote_id < b.quote_id;
            });
  if (groups_out) *groups_out = std::move(groups);
  if (stats) *stats = local;
  return records;
}

}  // namespace quotegraph
