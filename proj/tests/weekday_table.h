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


#pragma once

#include <array>

#include "reviewlake/calendar.h"

namespace reviewlake::testing {

struct KnownWeekday {
  CivilDate date;
  unsigned iso_weekday;
};

// Checked against printed calendars.
inline constexpr std::array<KnownWeekday, 20> kKnownWeekdays = {{
    {{1970, 1, 1}, 4},   {{1972, 2, 29}, 2},  {{1975, 4, 30}, 3},  {{1984, 1, 24}, 2},
    {{1989, 11, 9}, 4},  {{1996, 2, 29}, 4},  {{1999, 12, 31}, 5}, {{2000, 1, 1}, 6},
    {{2000, 2, 29}, 2},  {{2001, 9, 11}, 2},  {{2008, 2, 29}, 5},  {{2010, 1, 1}, 5},
    {{2012, 12, 21}, 5}, {{2016, 2, 29}, 1},  {{2019, 7, 4}, 4},   {{2020, 3, 11}, 3},
    {{2022, 12, 25}, 7}, {{2023, 1, 1}, 7},   {{2024, 2, 29}, 4},  {{2029, 12, 31}, 1},
}};

}  // namespace reviewlake::testing
