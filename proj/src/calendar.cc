// Copyright 2026 The ReviewLake Authors
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


#include "reviewlake/calendar.h"

#include <array>
#include <cstdio>

namespace reviewlake {
namespace {

constexpr std::array<std::string_view, 7> kWeekdays = {"Monday", "Tuesday",  "Wednesday", "Thursday",
                                                       "Friday", "Saturday", "Sunday"};
constexpr std::array<std::string_view, 12> kMonths = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

int digit(char c) { return c >= '0' && c <= '9' ? c - '0' : -1; }

}  // namespace

bool is_leap_year(int year) { return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0; }

unsigned days_in_month(int year, unsigned month) {
  constexpr std::array<unsigned, 12> kDays = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) return 0;
  return month == 2 && is_leap_year(year) ? 29 : kDays[month - 1];
}

bool is_valid(const CivilDate& d) {
  return d.month >= 1 && d.month <= 12 && d.day >= 1 && d.day <= days_in_month(d.year, d.month);
}

// Era-based conversion: 400-year eras of 146097 days, years starting in March
// so the leap day falls at the end.
std::int64_t days_from_civil(const CivilDate& d) {
  const std::int64_t y = static_cast<std::int64_t>(d.year) - (d.month <= 2 ? 1 : 0);
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const std::int64_t yoe = y - era * 400;
  const std::int64_t mp = (d.month + 9) % 12;
  const std::int64_t doy = (153 * mp + 2) / 5 + d.day - 1;
  const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

CivilDate civil_from_days(std::int64_t days) {
  const std::int64_t z = days + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const std::int64_t doe = z - era * 146097;
  const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::int64_t mp = (5 * doy + 2) / 153;
  const auto day = static_cast<unsigned>(doy - (153 * mp + 2) / 5 + 1);
  const auto month = static_cast<unsigned>(mp < 10 ? mp + 3 : mp - 9);
  const auto year = static_cast<int>(yoe + era * 400 + (month <= 2 ? 1 : 0));
  return {year, month, day};
}

unsigned iso_weekday(const CivilDate& d) {
  // 1970-01-01 was a Thursday (ISO 4).
  const std::int64_t days = days_from_civil(d);
  const std::int64_t from_monday = ((days + 3) % 7 + 7) % 7;
  return static_cast<unsigned>(from_monday + 1);
}

std::string_view weekday_name(unsigned iso) {
  return iso >= 1 && iso <= 7 ? kWeekdays[iso - 1] : std::string_view{};
}

std::string_view month_name(unsigned month) {
  return month >= 1 && month <= 12 ? kMonths[month - 1] : std::string_view{};
}

std::string to_iso(const CivilDate& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", d.year, d.month, d.day);
  return buf;
}

std::optional<CivilDate> parse_iso(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  int v[8];
  constexpr std::array<int, 8> kPos = {0, 1, 2, 3, 5, 6, 8, 9};
  for (std::size_t i = 0; i < kPos.size(); ++i) {
    v[i] = digit(s[kPos[i]]);
    if (v[i] < 0) return std::nullopt;
  }
  CivilDate d{v[0] * 1000 + v[1] * 100 + v[2] * 10 + v[3], static_cast<unsigned>(v[4] * 10 + v[5]),
              static_cast<unsigned>(v[6] * 10 + v[7])};
  if (!is_valid(d)) return std::nullopt;
  return d;
}

}  // namespace reviewlake
