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

// Per-article cleaning: quotation spans, short-quote removal, spurious
// mention removal and assignment of mentions to the quotes that contain
// them. Everything here is a pure function of one article.

#ifndef QUOTEGRAPH_PREPROCESS_HPP_
#define QUOTEGRAPH_PREPROCESS_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "quotegraph/corpus_io.hpp"

namespace quotegraph {

using StopwordSet = std::unordered_set<std::string>;

// Built-in case-folded English stopword list.
const StopwordSet &DefaultStopwords();

// One word per line, case-folded on load. Throws IoError.
StopwordSet LoadStopwords(const std::filesystem::path &path);

struct PreprocessConfig {
  // Quotes with fewer unique content words are dropped.
  int min_unique_words = 5;
  // Window length, in content words, for near-duplicate grouping.
  int min_shared_substring = 8;
  StopwordSet stopwords = DefaultStopwords();

  // Throws std::invalid_argument unless min_unique_words >= 1 and
  // min_shared_substring >= 2.
  void Validate() const;
};

// Tokens joined by single spaces; never has leading, trailing or doubled
// spaces as long as no token is empty or space-padded.
class NormalizedTokenString {
 public:
  NormalizedTokenString() = default;
  explicit NormalizedTokenString(std::span<const std::string> tokens);

  const std::string &value() const { return value_; }
  bool Contains(const NormalizedTokenString &other) const {
    return value_.find(other.value_) != std::string::npos;
  }

 private:
  std::string value_;
};

// Case-folded non-punctuation tokens, in order, duplicates kept.
std::vector<std::string> ContentWords(std::span<const std::string> tokens);

bool IsShortQuotation(std::span<const std::string> tokens,
                      const PreprocessConfig &cfg);

// Index of the first closing mark at or after `start`, i.e. the exclusive
// end of the quote. nullopt when the article ends first (unterminated).
std::optional<std::size_t> FindQuotationEnd(
    std::span<const std::string> tokens, std::size_t start);

// One-character, letterless and stopword tokens cannot carry a mention.
bool IsExcludedMentionToken(std::string_view token,
                            const PreprocessConfig &cfg);

// Keeps a mention iff at least one of its surface tokens is not excluded.
std::vector<MentionSpan> FilterSpuriousMentions(
    std::span<const MentionSpan> mentions, const PreprocessConfig &cfg);

struct QuoteSpan {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive, points at the closing mark
};

// Mentions lying inside the span. A mention whose span crosses the quote
// boundary or runs past the article is assigned when its surface string is
// a substring of the quote's token string.
std::vector<MentionSpan> MentionsInQuotation(
    const Article &article, QuoteSpan span,
    std::span<const MentionSpan> mentions);

// Overload over all of the article's mentions.
std::vector<MentionSpan> MentionsInQuotation(const Article &article,
                                             QuoteSpan span);

// One appearance of a quotation in one article after cleaning.
struct QuoteContext {
  std::string quote_id;
  std::string article_uid;
  std::string url;
  Date date;
  std::vector<std::string> tokens;
  std::vector<SpeakerCandidate> candidates;
  // Surfaces of in-quote PERSON mentions that passed the spurious filter.
  std::vector<std::string> mentions;

  friend bool operator==(const QuoteContext &, const QuoteContext &) = default;
};

struct PreprocessStats {
  std::size_t articles = 0;
  std::size_t occurrences = 0;
  std::size_t unterminated = 0;
  std::size_t short_quotes = 0;
  std::size_t non_person_mentions = 0;
  std::size_t spurious_mentions = 0;
  std::size_t contexts = 0;

  PreprocessStats &operator+=(const PreprocessStats &other);
};

// Applies every per-article step and returns the surviving contexts in
// quotation order.
std::vector<QuoteContext> PreprocessArticle(const Article &article,
                                            const PreprocessConfig &cfg,
                                            PreprocessStats *stats = nullptr);

std::string SerializeContext(const QuoteContext &context);
QuoteContext ParseContext(std::string_view line);

}  // namespace quotegraph

#endif  // QUOTEGRAPH_PREPROCESS_HPP_
