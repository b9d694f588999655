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


// Proleptic-Gregorian civil dates.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace reviewlake {

struct CivilDate {
  int year = 1970;
  unsigned month = 1;  // 1..12
  unsigned day = 1;    // 1..31

  friend auto operator<=>(const CivilDate&, const CivilDate&) = default;
};

bool is_leap_year(int year);
unsigned days_in_month(int year, unsigned month);
bool is_valid(const CivilDate& d);

// Days since 1970-01-01 (negative before). `d` must be valid.
std::int64_t days_from_civil(const CivilDate& d);
CivilDate civil_from_days(std::int64_t days);

// ISO numbering: Monday = 1 ... Sunday = 7.
unsigned iso_weekday(const CivilDate& d);
std::string_view weekday_name(unsigned iso_weekday);
std::string_view month_name(unsigned month);

// yyyy-MM-dd, zero padded.
std::string to_iso(const CivilDate& d);
// Strict yyyy-MM-dd; nullopt unless the text is a real calendar date.
std::optional<CivilDate> parse_iso(std::string_view text);

}  // namespace reviewlake
