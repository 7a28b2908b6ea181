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

// UTF-8 helpers shared by the preprocessing, linking and name modules.
// Character classes follow Unicode general categories and folding is
// Unicode simple case folding, so results do not depend on locale.

#ifndef QUOTEGRAPH_TEXT_HPP_
#define QUOTEGRAPH_TEXT_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace quotegraph {

// Opening and closing quotation-mark tokens (U+201C, U+201D).
inline constexpr std::string_view kOpenQuoteMark = "\xE2\x80\x9C";
inline constexpr std::string_view kCloseQuoteMark = "\xE2\x80\x9D";

// Decodes UTF-8; malformed sequences decode to U+FFFD.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view text);

// Simple (1:1) Unicode case folding of every code point.
std::string CaseFold(std::string_view text);

// True iff the token contains no letter (L*) and no decimal digit (Nd).
bool IsPunctuation(std::string_view token);

// True iff the token contains at least one letter (L*).
bool HasLetter(std::string_view token);

std::size_t CodePointCount(std::string_view text);

// Joins with single spaces.
std::string JoinTokens(std::span<const std::string> tokens);

// Splits on ASCII and Unicode whitespace, dropping empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view text);

// Splits into maximal runs of letters/digits; everything else separates.
std::vector<std::string> SplitWords(std::string_view text);

}  // namespace quotegraph

#endif  // QUOTEGRAPH_TEXT_HPP_
