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

#include "quotegraph/date.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace quotegraph {
namespace {

bool ParseFixedDigits(std::string_view text, std::size_t width, int *out) {
  if (text.size() != width) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day) {
  std::chrono::year_month_day ymd{std::chrono::year{year},
                                  std::chrono::month{month},
                                  std::chrono::day{day}};
  if (!ymd.ok()) throw std::invalid_argument("invalid calendar date");
  days_ = std::chrono::sys_days{ymd};
}

std::optional<Date> Date::Parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!ParseFixedDigits(text.substr(0, 4), 4, &y) ||
      !ParseFixedDigits(text.substr(5, 2), 2, &m) ||
      !ParseFixedDigits(text.substr(8, 2), 2, &d)) {
    return std::nullopt;
  }
  std::chrono::year_month_day ymd{std::chrono::year{y},
                                  std::chrono::month{static_cast<unsigned>(m)},
                                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date(std::chrono::sys_days{ymd});
}

std::string Date::ToString() const {
  auto d = ymd();
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()),
                static_cast<unsigned>(d.day()));
  return buf;
}

int Date::YearsSince(const Date &birth) const {
  auto now = ymd();
  auto born = birth.ymd();
  int years = static_cast<int>(now.year()) - static_cast<int>(born.year());
  auto now_md = std::chrono::month_day{now.month(), now.day()};
  auto born_md = std::chrono::month_day{born.month(), born.day()};
  if (now_md < born_md) --years;
  return years;
}

std::string_view PrecisionName(DatePrecision precision) {
  switch (precision) {
    case DatePrecision::kDay: return "day";
    case DatePrecision::kMonth: return "month";
    case DatePrecision::kYear: return "year";
  }
  return "day";
}

std::optional<DatePrecision> ParsePrecision(std::string_view name) {
  if (name == "day") return DatePrecision::kDay;
  if (name == "month") return DatePrecision::kMonth;
  if (name == "year") return DatePrecision::kYear;
  return std::nullopt;
}

std::optional<PartialDate> PartialDate::Parse(
    std::string_view text, std::optional<DatePrecision> precision) {
  PartialDate out;
  int value = 0;
  if (text.size() < 4 || !ParseFixedDigits(text.substr(0, 4), 4, &value)) {
    return std::nullopt;
  }
  out.year = value;
  out.precision = DatePrecision::kYear;
  if (text.size() > 4) {
    if (text.size() < 7 || text[4] != '-' ||
        !ParseFixedDigits(text.substr(5, 2), 2, &value) || value < 1 ||
        value > 12) {
      return std::nullopt;
    }
    out.month = static_cast<unsigned>(value);
    out.precision = DatePrecision::kMonth;
  }
  if (text.size() > 7) {
    if (text.size() != 10 || text[7] != '-' ||
        !ParseFixedDigits(text.substr(8, 2), 2, &value)) {
      return std::nullopt;
    }
    out.day = static_cast<unsigned>(value);
    out.precision = DatePrecision::kDay;
    std::chrono::year_month_day ymd{std::chrono::year{out.year},
                                    std::chrono::month{out.month},
                                    std::chrono::day{out.day}};
    if (!ymd.ok()) return std::nullopt;
  }
  if (precision) {
    // A stated precision may only discard components, never invent them.
    if (static_cast<int>(*precision) < static_cast<int>(out.precision)) {
      return std::nullopt;
    }
    out.precision = *precision;
    if (out.precision != DatePrecision::kDay) out.day = 1;
    if (out.precision == DatePrecision::kYear) out.month = 1;
  }
  return out;
}

Date PartialDate::Earliest() const {
  switch (precision) {
    case DatePrecision::kYear: return Date(year, 1, 1);
    case DatePrecision::kMonth: return Date(year, month, 1);
    case DatePrecision::kDay: break;
  }
  return Date(year, month, day);
}

std::string PartialDate::ToString() const {
  char buf[16];
  switch (precision) {
    case DatePrecision::kYear:
      std::snprintf(buf, sizeof(buf), "%04d", year);
      break;
    case DatePrecision::kMonth:
      std::snprintf(buf, sizeof(buf), "%04d-%02u", year, month);
      break;
    case DatePrecision::kDay:
      std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year, month, day);
      break;
  }
  return buf;
}

}  // namespace quotegraph
