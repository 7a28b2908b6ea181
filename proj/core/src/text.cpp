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

#include "quotegraph/text.hpp"

#include <unicode/uchar.h>

namespace quotegraph {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point starting at text[*pos] and advances *pos.
char32_t NextCodePoint(std::string_view text, std::size_t *pos) {
  auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(text[i]);
  };
  std::size_t i = *pos;
  unsigned char lead = byte(i);
  if (lead < 0x80) {
    *pos = i + 1;
    return lead;
  }
  int extra;
  char32_t cp;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    *pos = i + 1;
    return kReplacement;
  }
  for (int k = 1; k <= extra; ++k) {
    if (i + k >= text.size() || (byte(i + k) & 0xC0) != 0x80) {
      *pos = i + k;
      return kReplacement;
    }
    cp = (cp << 6) | (byte(i + k) & 0x3F);
  }
  *pos = i + extra + 1;
  // Overlong forms, surrogates and out-of-range values.
  static constexpr char32_t kMin[] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return kReplacement;
  }
  return cp;
}

void AppendUtf8(char32_t cp, std::string *out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool IsLetter(char32_t cp) { return u_isalpha(static_cast<UChar32>(cp)); }

bool IsDigit(char32_t cp) { return u_isdigit(static_cast<UChar32>(cp)); }

bool IsSpace(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }

template <typename Fn>
void ForEachCodePoint(std::string_view text, Fn &&fn) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t begin = pos;
    char32_t cp = NextCodePoint(text, &pos);
    if (!fn(cp, begin, pos)) return;
  }
}

}  // namespace

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  ForEachCodePoint(text, [&](char32_t cp, std::size_t, std::size_t) {
    out.push_back(cp);
    return true;
  });
  return out;
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) AppendUtf8(cp, &out);
  return out;
}

std::string CaseFold(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  ForEachCodePoint(text, [&](char32_t cp, std::size_t, std::size_t) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp >= 'A' && cp <= 'Z' ? cp + 32 : cp));
    } else {
      AppendUtf8(static_cast<char32_t>(
                     u_foldCase(static_cast<UChar32>(cp), U_FOLD_CASE_DEFAULT)),
                 &out);
    }
    return true;
  });
  return out;
}

bool IsPunctuation(std::string_view token) {
  bool word_char = false;
  ForEachCodePoint(token, [&](char32_t cp, std::size_t, std::size_t) {
    word_char = IsLetter(cp) || IsDigit(cp);
    return !word_char;
  });
  return !word_char;
}

bool HasLetter(std::string_view token) {
  bool letter = false;
  ForEachCodePoint(token, [&](char32_t cp, std::size_t, std::size_t) {
    letter = IsLetter(cp);
    return !letter;
  });
  return letter;
}

std::size_t CodePointCount(std::string_view text) {
  std::size_t n = 0;
  ForEachCodePoint(text, [&](char32_t, std::size_t, std::size_t) {
    ++n;
    return true;
  });
  return n;
}

std::string JoinTokens(std::span<const std::string> tokens) {
  std::size_t size = tokens.empty() ? 0 : tokens.size() - 1;
  for (const auto &t : tokens) size += t.size();
  std::string out;
  out.reserve(size);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t piece = std::string_view::npos;
  ForEachCodePoint(text, [&](char32_t cp, std::size_t begin, std::size_t) {
    if (IsSpace(cp)) {
      if (piece != std::string_view::npos) {
        out.emplace_back(text.substr(piece, begin - piece));
        piece = std::string_view::npos;
      }
    } else if (piece == std::string_view::npos) {
      piece = begin;
    }
    return true;
  });
  if (piece != std::string_view::npos) out.emplace_back(text.substr(piece));
  return out;
}

std::vector<std::string> SplitWords(std::string_view text) {
  std::vector<std::string> out;
  std::size_t piece = std::string_view::npos;
  ForEachCodePoint(text, [&](char32_t cp, std::size_t begin, std::size_t) {
    if (!(IsLetter(cp) || IsDigit(cp))) {
      if (piece != std::string_view::npos) {
        out.emplace_back(text.substr(piece, begin - piece));
        piece = std::string_view::npos;
      }
    } else if (piece == std::string_view::npos) {
      piece = begin;
    }
    return true;
  });
  if (piece != std::string_view::npos) out.emplace_back(text.substr(piece));
  return out;
}

}  // namespace quotegraph
