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

#include "quotegraph/synth.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "quotegraph/corpus_io.hpp"
#include "quotegraph/preprocess.hpp"
#include "quotegraph/text.hpp"
#include "quotegraph/wikidata_enrich.hpp"

namespace quotegraph {
namespace {

namespace fs = std::filesystem;

// Draws are built from raw engine output so files are identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t Below(std::size_t n) { return engine_() % n; }
  std::size_t Between(std::size_t lo, std::size_t hi) {
    return lo + Below(hi - lo + 1);
  }
  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool Chance(double p) { return Unit() < p; }
  template <typename T>
  void Shuffle(std::vector<T> *v) {
    for (std::size_t i = v->size(); i > 1; --i) {
      std::swap((*v)[i - 1], (*v)[Below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

constexpr std::array<const char *, 12> kGivenSyllables = {
    "ka", "lo", "mi", "ne", "ra", "su", "ti", "vo", "ze", "da", "fe", "go"};
constexpr std::array<const char *, 12> kFamilySyllables = {
    "bar", "cor", "dun", "fel", "gar", "hol",
    "jen", "kir", "lam", "mor", "nus", "pet"};
constexpr std::array<const char *, 10> kWordSyllables = {
    "ab", "ex", "ol", "um", "ir", "ap", "et", "on", "us", "ig"};
constexpr std::size_t kNameSpace = 12 * 12 * 12 * 12;
constexpr std::size_t kOrgWords = 5;

std::string Capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

template <std::size_t N>
std::string Syllables(const std::array<const char *, N> &set, std::size_t code,
                      int count) {
  std::string out;
  for (int i = 0; i < count; ++i) {
    out += set[code % N];
    code /= N;
  }
  return out;
}

struct Person {
  std::string qid;
  std::string given;
  std::string family;
  std::string full() const { return given + " " + family; }
};

enum class Form { kFull, kLast, kFirst };

// A mention laid over quote tokens, offsets relative to the quote start.
struct QuoteMention {
  std::size_t offset = 0;
  std::size_t length = 0;
  std::string surface;
  std::string type{kPersonType};
  int person = -1;  // -1 for noise
};

struct Quote {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<QuoteMention> mentions;
  int speaker = -1;  // -1 = speaker not in the alias table
  int decoy = -1;  // -1 = runner-up candidate not in the alias table
  std::size_t contexts = 2;
  bool drop_one = false;  // one context loses a real mention
  std::string base;       // variant of this quote, if any
};

struct Placement {
  std::size_t quote = 0;
  bool drop = false;
};

std::string QuoteId(std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "quote-%07zu", n);
  return buf;
}

std::size_t ContentCount(std::span<const std::string> tokens) {
  return ContentWords(tokens).size();
}

std::size_t UniqueContent(std::span<const std::string> tokens) {
  auto w = ContentWords(tokens);
  return std::set<std::string>(w.begin(), w.end()).size();
}

class Generator {
 public:
  Generator(std::size_t articles, std::uint64_t seed)
      : rng_(seed), articles_(std::max<std::size_t>(articles, 1)) {
    std::size_t persons = std::clamp<std::size_t>(articles_ / 3, 24, 20000);
    for (std::size_t i = 0; i < persons; ++i) {
      Person p;
      p.qid = "Q" + std::to_string(1000 + i);
      p.given = Capitalize(Syllables(kGivenSyllables, i, 4));
      p.family = Capitalize(
          Syllables(kFamilySyllables, (i * 7919 + 13) % kNameSpace, 4));
      persons_.push_back(std::move(p));
    }
    const auto &stop = DefaultStopwords();
    for (std::size_t i = 0; i < 1000; ++i) {
      auto w = Syllables(kWordSyllables, i, 3);
      if (!stop.contains(w)) vocab_.push_back(std::move(w));
    }
  }

  SyntheticBundle Write(const fs::path &dir);

 private:
  // Skewed toward low indices so some people are quoted and mentioned
  // far more often than others.
  int PickPerson() {
    double u = rng_.Unit();
    return static_cast<int>(u * u * static_cast<double>(persons_.size()));
  }
  const std::string &Word() {
    return vocab_[kOrgWords + rng_.Below(vocab_.size() - kOrgWords)];
  }
  std::vector<std::string> Filler(std::size_t lo, std::size_t hi) {
    std::vector<std::string> out;
    std::size_t n = rng_.Between(lo, hi);
    for (std::size_t i = 0; i < n; ++i) out.push_back(Word());
    out.push_back(".");
    return out;
  }

  Quote MakeBase(std::size_t n);
  bool MakeVariant(const Quote &base, std::size_t n, Quote *variant);
  void BuildQuotes();
  void WriteArticles(const fs::path &path);
  void WriteAliases(const fs::path &path);
  void WriteSnapshot(const fs::path &path);
  void WriteTruth(const fs::path &edges, const fs::path &groups);

  Rng rng_;
  std::size_t articles_;
  std::vector<Person> persons_;
  std::vector<std::string> vocab_;
  std::vector<Quote> quotes_;
  std::size_t next_id_ = 1;
  std::size_t noise_quotes_ = 0;
};

Quote Generator::MakeBase(std::size_t n) {
  Quote q;
  q.id = QuoteId(n);
  q.speaker = rng_.Chance(0.03) ? -1 : PickPerson();
  q.decoy = q.speaker < 0 ? -1 : PickPerson();
  q.contexts = rng_.Chance(0.25) ? 3 : 2;

  std::size_t words = rng_.Between(10, 18);
  std::vector<std::vector<std::string>> pieces;
  std::vector<QuoteMention> pending;  // offsets filled in below
  for (std::size_t i = 0; i < words; ++i) pieces.push_back({Word()});
  if (rng_.Chance(0.3)) pieces.push_back({","});

  std::set<int> targets;
  std::size_t mention_count = rng_.Below(4);
  for (std::size_t i = 0; i < mention_count; ++i) {
    int t = (q.speaker >= 0 && rng_.Chance(0.05)) ? q.speaker : PickPerson();
    if (!targets.insert(t).second) continue;
    const Person &p = persons_[t];
    std::vector<std::string> name;
    switch (static_cast<Form>(rng_.Below(3))) {
      case Form::kFull: name = {p.given, p.family}; break;
      case Form::kLast: name = {p.family}; break;
      case Form::kFirst: name = {p.given}; break;
    }
    pieces.push_back(name);
    QuoteMention m;
    m.surface = JoinTokens(name);
    m.person = t;
    pending.push_back(m);
  }
  if (rng_.Chance(0.1)) {
    pieces.push_back({"the"});
    pending.push_back({0, 0, "the", std::string(kPersonType), -1});
  }
  if (rng_.Chance(0.05)) {
    pieces.push_back({"J", "."});
    pending.push_back({0, 0, "J .", std::string(kPersonType), -1});
  }
  if (rng_.Chance(0.1)) {
    pieces.push_back({vocab_[rng_.Below(kOrgWords)]});
    pending.push_back({0, 0, pieces.back()[0], "ORG", -1});
  }

  // Shuffle the non-word pieces into the word sequence, keeping each
  // pending mention tied to its piece.
  std::vector<std::size_t> order(pieces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng_.Shuffle(&order);
  std::size_t comma = pieces.size() > words && pieces[words][0] == "," ? 1 : 0;
  for (std::size_t pos : order) {
    std::size_t start = q.tokens.size();
    for (const auto &t : pieces[pos]) q.tokens.push_back(t);
    if (pos >= words + comma) {
      QuoteMention m = pending[pos - words - comma];
      m.offset = start;
      m.length = pieces[pos].size();
      q.mentions.push_back(std::move(m));
    }
  }
  q.tokens.push_back(".");
  std::sort(q.mentions.begin(), q.mentions.end(),
            [](const auto &a, const auto &b) { return a.offset < b.offset; });
  bool has_real = std::any_of(q.mentions.begin(), q.mentions.end(),
                              [](const auto &m) { return m.person >= 0; });
  q.drop_one = q.contexts == 3 && has_real && rng_.Chance(0.3);
  return q;
}

bool Generator::MakeVariant(const Quote &base, std::size_t n, Quote *variant) {
  const std::size_t len = base.tokens.size();
  std::size_t base_content = ContentCount(base.tokens);
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::size_t a = rng_.Below(len / 2);
    std::size_t b = rng_.Between(a + 1, len);
    std::span<const std::string> slice(base.tokens.data() + a, b - a);
    if (ContentCount(slice) < 8 || UniqueContent(slice) < 5) continue;
    if (ContentCount(slice) >= base_content) continue;
    bool cuts = false;
    for (const auto &m : base.mentions) {
      bool inside = m.offset >= a && m.offset + m.length <= b;
      bool outside = m.offset + m.length <= a || m.offset >= b;
      if (!inside && !outside) cuts = true;
    }
    if (cuts) continue;
    Quote v;
    v.id = QuoteId(n);
    v.tokens.assign(slice.begin(), slice.end());
    for (const auto &m : base.mentions) {
      if (m.offset >= a && m.offset + m.length <= b) {
        QuoteMention c = m;
        c.offset -= a;
        v.mentions.push_back(std::move(c));
      }
    }
    v.speaker = base.speaker;
    v.decoy = base.decoy;
    v.contexts = 1;
    v.base = base.id;
    *variant = std::move(v);
    return true;
  }
  return false;
}

void Generator::BuildQuotes() {
  std::size_t bases = 2 * articles_;
  for (std::size_t i = 0; i < bases; ++i) {
    Quote base = MakeBase(next_id_++);
    // Variants only join quotes whose context mention sets all agree, so
    // the expected mention set stays the base quote's own.
    if (!base.drop_one && rng_.Chance(0.08)) {
      Quote v;
      if (MakeVariant(base, next_id_, &v)) {
        ++next_id_;
        quotes_.push_back(std::move(base));
        quotes_.push_back(std::move(v));
        continue;
      }
    }
    quotes_.push_back(std::move(base));
  }
}

void Generator::WriteArticles(const fs::path &path) {
  std::vector<Placement> placements;
  for (std::size_t i = 0; i < quotes_.size(); ++i) {
    for (std::size_t c = 0; c < quotes_[i].contexts; ++c) {
      placements.push_back({i, quotes_[i].drop_one && c == 0});
    }
  }
  rng_.Shuffle(&placements);
  std::vector<std::vector<Placement>> per_article(articles_);
  for (std::size_t k = 0; k < placements.size(); ++k) {
    std::size_t a = k % articles_;
    for (std::size_t tries = 0; tries < articles_; ++tries) {
      auto &slot = per_article[(a + tries) % articles_];
      bool dup = std::any_of(slot.begin(), slot.end(), [&](const auto &p) {
        return p.quote == placements[k].quote;
      });
      if (!dup) {
        slot.push_back(placements[k]);
        break;
      }
    }
  }

  auto out = OpenOutput(path);
  const auto epoch = Date(2015, 1, 1).days();
  for (std::size_t ai = 0; ai < articles_; ++ai) {
    Article art;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "a%07zu", ai);
    art.article_uid = buf;
    std::snprintf(buf, sizeof(buf), "https://news.example/%07zu", ai);
    art.url = buf;
    art.date = Date(epoch + std::chrono::days(rng_.Below(6 * 365)));
    auto append = [&](const std::vector<std::string> &toks) {
      art.tokens.insert(art.tokens.end(), toks.begin(), toks.end());
    };
    append(Filler(3, 8));

    auto place = [&](const std::string &id, const std::vector<std::string> &toks,
                     const std::vector<QuoteMention> &mentions, int speaker,
                     int decoy, bool close) {
      std::string speaker_name = speaker >= 0 ? persons_[speaker].full()
                                              : std::string("Anonymous Source");
      std::size_t name_at = art.tokens.size();
      append(SplitWhitespace(speaker_name));
      art.mentions.push_back(
          {name_at, art.tokens.size(), speaker_name, std::string(kPersonType)});
      append({"said", ",", std::string(kOpenQuoteMark)});
      QuoteOccurrence occ;
      occ.quote_id = id;
      occ.start_index = art.tokens.size();
      double p = 0.55 + 0.4 * rng_.Unit();
      double q = std::min(1.0 - p, p - 0.1) * rng_.Unit();
      occ.candidates.push_back({speaker_name, p, name_at, name_at + 1});
      occ.candidates.push_back(
          {decoy >= 0 ? persons_[decoy].full() : "Unnamed Official", q, {}, {}});
      for (const auto &m : mentions) {
        art.mentions.push_back({occ.start_index + m.offset,
                                occ.start_index + m.offset + m.length,
                                m.surface, m.type});
      }
      append(toks);
      if (close) append({std::string(kCloseQuoteMark), "."});
      art.quotations.push_back(std::move(occ));
    };

    for (const auto &pl : per_article[ai]) {
      const Quote &q = quotes_[pl.quote];
      auto mentions = q.mentions;
      if (pl.drop) {
        auto it = std::find_if(mentions.begin(), mentions.end(),
                               [](const auto &m) { return m.person >= 0; });
        if (it != mentions.end()) mentions.erase(it);
      }
      place(q.id, q.tokens, mentions, q.speaker, q.decoy, true);
      if (rng_.Chance(0.5)) append(Filler(2, 6));
    }
    if (rng_.Chance(0.15)) {
      // Too few distinct words to keep, though it names someone.
      int t = PickPerson();
      const auto &fam = persons_[t].family;
      std::vector<std::string> toks = {"Thank", "you", ",", fam, "!"};
      place(QuoteId(next_id_++), toks, {{3, 1, fam, std::string(kPersonType), t}},
            PickPerson(), PickPerson(), true);
      ++noise_quotes_;
    }
    if (rng_.Chance(0.1)) {
      // Runs off the end of the article without a closing mark.
      int t = PickPerson();
      std::vector<std::string> toks;
      for (int i = 0; i < 8; ++i) toks.push_back(Word());
      std::size_t at = toks.size();
      toks.push_back(persons_[t].given);
      toks.push_back(persons_[t].family);
      toks.push_back(Word());
      place(QuoteId(next_id_++), toks,
            {{at, 2, persons_[t].full(), std::string(kPersonType), t}},
            PickPerson(), PickPerson(), false);
      ++noise_quotes_;
    }
    out << SerializeArticle(art) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

void Generator::WriteAliases(const fs::path &path) {
  auto out = OpenOutput(path);
  const std::size_t n = persons_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto &p = persons_[i];
    out << p.full() << '\t' << p.qid << "\t1\n";
    out << p.family << '\t' << p.qid << "\t0.8\n";
    out << p.family << '\t' << persons_[(i + 1) % n].qid << "\t0.1\n";
    out << p.given << '\t' << p.qid << "\t0.6\n";
  }
  // Entries that only fire if spurious or non-person mentions leak through.
  out << "the\t" << persons_[0].qid << "\t0.9\n";
  out << "j .\t" << persons_[1].qid << "\t0.9\n";
  for (std::size_t i = 0; i < kOrgWords; ++i) {
    out << vocab_[i] << '\t' << persons_[(i + 2) % n].qid << "\t1\n";
  }
  if (!out) throw IoError("write failed: " + path.string());
}

void Generator::WriteSnapshot(const fs::path &path) {
  static const std::array<const char *, 4> kCountries = {"Q30", "Q145", "Q668",
                                                         "Q183"};
  static const std::array<std::pair<const char *, const char *>, 3> kParties = {
      {{"Q29552", "Q29468"}, {"Q9630", "Q9626"}, {"Q10230", "Q10225"}}};
  static const std::array<const char *, 6> kOccupations = {
      "Q33999", "Q36180", "Q937857", "Q82955", "Q185351", "Q43845"};

  auto out = OpenOutput(path);
  for (std::size_t i = 0; i < persons_.size(); ++i) {
    const auto &p = persons_[i];
    bool profiled = !rng_.Chance(0.05);
    WikidataSnapshotRecord r;
    r.qid = p.qid;
    r.label = p.full();
    r.given_names = {p.given};
    r.family_names = {p.family};
    if (rng_.Chance(0.9)) {
      PartialDate d;
      d.year = static_cast<int>(rng_.Between(1940, 1995));
      d.month = static_cast<unsigned>(rng_.Between(1, 12));
      d.day = static_cast<unsigned>(rng_.Between(1, 28));
      if (rng_.Chance(0.05)) d.precision = DatePrecision::kYear;
      r.birth_dates.push_back(d);
      if (rng_.Chance(0.03)) {
        d.year += 1;
        r.birth_dates.push_back(d);
      }
    }
    std::size_t home = rng_.Below(kCountries.size());
    r.nationalities.push_back(kCountries[home]);
    if (rng_.Chance(0.1)) r.nationalities.push_back("Q15180");
    if (rng_.Chance(0.03)) r.nationalities.push_back("Q838261");
    if (rng_.Chance(0.05)) {
      r.nationalities.push_back(kCountries[(home + 1) % kCountries.size()]);
    }
    double g = rng_.Unit();
    if (g < 0.45) {
      r.genders = {std::string(kFemaleQid)};
    } else if (g < 0.90) {
      r.genders = {std::string(kMaleQid)};
    } else if (g < 0.94) {
      r.genders = {std::string(kNonBinaryQid)};
    } else if (g < 0.97) {
      r.genders = {std::string(kFemaleQid), std::string(kNonBinaryQid)};
    }
    bool politician = false;
    if (home < kParties.size() && rng_.Chance(0.5)) {
      politician = true;
      auto [first, second] = kParties[home];
      if (rng_.Unit() < 0.5) std::swap(first, second);
      PartyMembershipClaim a;
      a.party = first;
      a.start = PartialDate{static_cast<int>(rng_.Between(1980, 2010)), 1, 1,
                            DatePrecision::kYear};
      if (rng_.Chance(0.3)) {
        int y = static_cast<int>(rng_.Between(2016, 2019));
        a.end = PartialDate{y, 1, 1, DatePrecision::kYear};
        r.party_memberships.push_back(a);
        PartyMembershipClaim b;
        b.party = second;
        b.start = PartialDate{y, 1, 1, DatePrecision::kYear};
        r.party_memberships.push_back(b);
      } else if (rng_.Chance(0.1)) {
        PartyMembershipClaim undated;
        undated.party = first;
        r.party_memberships.push_back(undated);
      } else {
        r.party_memberships.push_back(a);
      }
    }
    r.occupations.push_back(politician && rng_.Chance(0.7)
                                ? "Q82955"
                                : kOccupations[rng_.Below(kOccupations.size())]);
    if (rng_.Chance(0.2)) {
      r.occupations.push_back(kOccupations[rng_.Below(kOccupations.size())]);
    }
    if (i == 0) {
      // A stale record that the later line replaces.
      WikidataSnapshotRecord stale = r;
      stale.label = "Stale";
      stale.genders.clear();
      out << SerializeSnapshotRecord(stale) << '\n';
    }
    if (i == 2) {
      PartyMembershipClaim inverted;
      inverted.party = "Q9630";
      inverted.start = PartialDate{2012, 1, 1, DatePrecision::kYear};
      inverted.end = PartialDate{2010, 1, 1, DatePrecision::kYear};
      r.party_memberships.push_back(inverted);
    }
    if (profiled) out << SerializeSnapshotRecord(r) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

void Generator::WriteTruth(const fs::path &edges_path,
                           const fs::path &groups_path) {
  std::set<std::tuple<std::string, std::string, std::string, std::string>>
      edges;
  std::vector<std::pair<std::string, std::string>> groups;
  for (const auto &q : quotes_) {
    const std::string &rep = q.base.empty() ? q.id : q.base;
    groups.emplace_back(q.id, rep);
    if (!q.base.empty() || q.speaker < 0) continue;
    for (const auto &m : q.mentions) {
      if (m.person < 0 || m.person == q.speaker) continue;
      edges.emplace(persons_[q.speaker].qid, persons_[m.person].qid, q.id,
                    m.surface);
    }
  }
  std::sort(groups.begin(), groups.end());
  auto eout = OpenOutput(edges_path);
  for (const auto &[s, t, id, surface] : edges) {
    eout << s << '\t' << t << '\t' << id << '\t' << surface << '\n';
  }
  auto gout = OpenOutput(groups_path);
  for (const auto &[member, rep] : groups) gout << member << '\t' << rep << '\n';
  if (!eout || !gout) throw IoError("write failed: truth files");
}

SyntheticBundle Generator::Write(const fs::path &dir) {
  fs::create_directories(dir);
  SyntheticBundle b;
  b.articles = dir / "articles.jsonl";
  b.aliases = dir / "aliases.tsv";
  b.snapshot = dir / "snapshot.jsonl";
  b.hierarchy = dir / "hierarchy.tsv";
  b.defunct = dir / "defunct.txt";
  b.truth_edges = dir / "truth_edges.tsv";
  b.truth_groups = dir / "truth_groups.tsv";
  b.config = dir / "quotegraph.toml";

  BuildQuotes();
  WriteArticles(b.articles);
  WriteAliases(b.aliases);
  WriteSnapshot(b.snapshot);
  {
    auto out = OpenOutput(b.hierarchy);
    out << "Q33999\tQ483501\n"
           "Q36180\tQ2500638\n"
           "Q937857\tQ2066131\n"
           "Q2066131\tQ50995749\n"
           "Q43845\tQ215627\n"
           "Q215627\tQ43845\n"
           "Q185351\tQ185351\n";
  }
  {
    auto out = OpenOutput(b.defunct);
    out << "Q15180\nQ838261\n";
  }
  WriteTruth(b.truth_edges, b.truth_groups);
  {
    auto abs = [](const fs::path &p) { return fs::absolute(p).string(); };
    auto out = OpenOutput(b.config);
    out << "config-version = 1\n"
        << "articles = \"" << abs(b.articles) << "\"\n"
        << "aliases = \"" << abs(b.aliases) << "\"\n"
        << "snapshot = \"" << abs(b.snapshot) << "\"\n"
        << "hierarchy = \"" << abs(b.hierarchy) << "\"\n"
        << "defunct = \"" << abs(b.defunct) << "\"\n";
  }
  b.article_count = articles_;
  b.quote_count = quotes_.size() + noise_quotes_;
  b.person_count = persons_.size();
  return b;
}

}  // namespace

SyntheticBundle GenerateSynthetic(const std::filesystem::path &dir,
                                  std::size_t articles, std::uint64_t seed) {
  Generator gen(articles, seed);
  return gen.Write(dir);
}

}  // namespace quotegraph
