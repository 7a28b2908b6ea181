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

#include "quotegraph/preprocess.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <unordered_set>

#include "json_codec.hpp"
#include "quotegraph/text.hpp"

namespace quotegraph {

void PreprocessConfig::Validate() const {
  if (min_unique_words < 1) {
    throw std::invalid_argument("min_unique_words must be >= 1");
  }
  if (min_shared_substring < 2) {
    throw std::invalid_argument("min_shared_substring must be >= 2");
  }
}

NormalizedTokenString::NormalizedTokenString(
    std::span<const std::string> tokens)
    : value_(JoinTokens(tokens)) {}

std::vector<std::string> ContentWords(std::span<const std::string> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto &t : tokens) {
    if (!IsPunctuation(t)) out.push_back(CaseFold(t));
  }
  return out;
}

bool IsShortQuotation(std::span<const std::string> tokens,
                      const PreprocessConfig &cfg) {
  auto words = ContentWords(tokens);
  std::unordered_set<std::string> unique(words.begin(), words.end());
  return unique.size() < static_cast<std::size_t>(cfg.min_unique_words);
}

std::optional<std::size_t> FindQuotationEnd(
    std::span<const std::string> tokens, std::size_t start) {
  for (std::size_t i = start; i < tokens.size(); ++i) {
    if (tokens[i] == kCloseQuoteMark) return i;
  }
  return std::nullopt;
}

bool IsExcludedMentionToken(std::string_view token,
                            const PreprocessConfig &cfg) {
  if (CodePointCount(token) <= 1) return true;
  if (!HasLetter(token)) return true;
  return cfg.stopwords.contains(CaseFold(token));
}

std::vector<MentionSpan> FilterSpuriousMentions(
    std::span<const MentionSpan> mentions, const PreprocessConfig &cfg) {
  std::vector<MentionSpan> out;
  for (const auto &m : mentions) {
    for (const auto &token : SplitWhitespace(m.surface)) {
      if (!IsExcludedMentionToken(token, cfg)) {
        out.push_back(m);
        break;
      }
    }
  }
  return out;
}

std::vector<MentionSpan> MentionsInQuotation(
    const Article &article, QuoteSpan span,
    std::span<const MentionSpan> mentions) {
  const std::size_t n = article.tokens.size();
  const std::size_t quote_end = std::min(span.end, n);
  std::optional<NormalizedTokenString> quote_text;
  std::vector<MentionSpan> out;
  for (const auto &m : mentions) {
    bool past_article = m.end > n;
    if (!past_article && m.start >= span.start && m.end <= span.end) {
      out.push_back(m);
      continue;
    }
    bool crosses = m.start < span.end && m.end > span.start;
    if (!past_article && !crosses) continue;
    auto words = SplitWhitespace(m.surface);
    if (words.empty()) continue;
    if (!quote_text) {
      std::size_t begin = std::min(span.start, quote_end);
      quote_text.emplace(std::span<const std::string>(
          article.tokens.data() + begin, quote_end - begin));
    }
    if (quote_text->Contains(NormalizedTokenString(words))) out.push_back(m);
  }
  return out;
}

std::vector<MentionSpan> MentionsInQuotation(const Article &article,
                                             QuoteSpan span) {
  return MentionsInQuotation(article, span, article.mentions);
}

PreprocessStats &PreprocessStats::operator+=(const PreprocessStats &other) {
  articles += other.articles;
  occurrences += other.occurrences;
  unterminated += other.unterminated;
  short_quotes += other.short_quotes;
  non_person_mentions += other.non_person_mentions;
  spurious_mentions += other.spurious_mentions;
  contexts += other.contexts;
  return *this;
}

std::vector<QuoteContext> PreprocessArticle(const Article &article,
                                            const PreprocessConfig &cfg,
                                            PreprocessStats *stats) {
  PreprocessStats local;
  local.articles = 1;
  std::vector<MentionSpan> persons;
  for (const auto &m : article.mentions) {
    if (m.is_person()) {
      persons.push_back(m);
    } else {
      ++local.non_person_mentions;
    }
  }
  auto kept = FilterSpuriousMentions(persons, cfg);
  local.spurious_mentions = persons.size() - kept.size();

  std::vector<QuoteContext> out;
  for (const auto &q : article.quotations) {
    ++local.occurrences;
    auto end = FindQuotationEnd(article.tokens, q.start_index);
    if (!end) {
      ++local.unterminated;
      continue;
    }
    std::span<const std::string> text(article.tokens.data() + q.start_index,
                                      *end - q.start_index);
    if (IsShortQuotation(text, cfg)) {
      ++local.short_quotes;
      continue;
    }
    QuoteContext ctx;
    ctx.quote_id = q.quote_id;
    ctx.article_uid = article.article_uid;
    ctx.url = article.url;
    ctx.date = article.date;
    ctx.tokens.assign(text.begin(), text.end());
    for (const auto &cand : q.candidates) {
      ctx.candidates.push_back({cand.surface, cand.probability, {}, {}});
    }
    for (auto &m : MentionsInQuotation(article, {q.start_index, *end}, kept)) {
      ctx.mentions.push_back(std::move(m.surface));
    }
    out.push_back(std::move(ctx));
  }
  local.contexts = out.size();
  if (stats) *stats += local;
  return out;
}

namespace internal {

nlohmann::ordered_json ContextToJson(const QuoteContext &c) {
  nlohmann::ordered_json doc;
  doc["quoteID"] = c.quote_id;
  doc["articleUID"] = c.article_uid;
  doc["url"] = c.url;
  doc["date"] = c.date.ToString();
  doc["tokens"] = c.tokens;
  nlohmann::ordered_json candidates = nlohmann::ordered_json::array();
  for (const auto &cand : c.candidates) {
    candidates.push_back(
        {{"surface", cand.surface}, {"probability", cand.probability}});
  }
  doc["candidates"] = std::move(candidates);
  doc["mentions"] = c.mentions;
  return doc;
}

QuoteContext ContextFromJson(const nlohmann::json &doc) {
  try {
    QuoteContext c;
    c.quote_id = doc.at("quoteID").get<std::string>();
    c.article_uid = doc.at("articleUID").get<std::string>();
    c.url = doc.at("url").get<std::string>();
    auto date = Date::Parse(doc.at("date").get<std::string>());
    if (!date) throw SchemaError("invalid context date");
    c.date = *date;
    c.tokens = doc.at("tokens").get<std::vector<std::string>>();
    for (const auto &jc : doc.at("candidates")) {
      SpeakerCandidate cand;
      cand.surface = jc.at("surface").get<std::string>();
      cand.probability = jc.at("probability").get<double>();
      c.candidates.push_back(std::move(cand));
    }
    c.mentions = doc.at("mentions").get<std::vector<std::string>>();
    return c;
  } catch (const nlohmann::json::exception &e) {
    throw SchemaError(std::string("context record: ") + e.what());
  }
}

}  // namespace internal

std::string SerializeContext(const QuoteContext &c) {
  return internal::ContextToJson(c).dump();
}

QuoteContext ParseContext(std::string_view line) {
  auto doc = nlohmann::json::parse(line.begin(), line.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw SchemaError("malformed context record");
  }
  return internal::ContextFromJson(doc);
}

}  // namespace quotegraph
