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

#ifndef QUOTEGRAPH_DATE_HPP_
#define QUOTEGRAPH_DATE_HPP_

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace quotegraph {

// Calendar date at day precision (UTC).
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::sys_days days) : days_(days) {}
  Date(int year, unsigned month, unsigned day);

  // Strict YYYY-MM-DD. Returns nullopt for anything else, including
  // impossible calendar days such as 2009-02-30.
  static std::optional<Date> Parse(std::string_view text);

  std::string ToString() const;

  std::chrono::year_month_day ymd() const {
    return std::chrono::year_month_day{days_};
  }
  std::chrono::sys_days days() const { return days_; }

  // Whole years elapsed from `birth` to `this` (birthday-aware).
  int YearsSince(const Date &birth) const;

  friend constexpr auto operator<=>(const Date &, const Date &) = default;

 private:
  std::chrono::sys_days days_{};
};

enum class DatePrecision { kDay, kMonth, kYear };

std::string_view PrecisionName(DatePrecision precision);
std::optional<DatePrecision> ParsePrecision(std::string_view name);

// A date known only up to some precision, as in Wikidata qualifiers.
struct PartialDate {
  int year = 0;
  unsigned month = 1;
  unsigned day = 1;
  DatePrecision precision = DatePrecision::kDay;

  // Accepts YYYY, YYYY-MM or YYYY-MM-DD. The precision is taken from the
  // form unless `precision` forces a coarser one.
  static std::optional<PartialDate> Parse(
      std::string_view text, std::optional<DatePrecision> precision = {});

  // Earliest calendar day compatible with the known components:
  // year precision maps to January 1st, month precision to day 1.
  Date Earliest() const;

  std::string ToString() const;

  friend bool operator==(const PartialDate &, const PartialDate &) = default;
};

}  // namespace quotegraph

#endif  // QUOTEGRAPH_DATE_HPP_
