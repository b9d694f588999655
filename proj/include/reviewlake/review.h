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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "reviewlake/calendar.h"
#include "reviewlake/types.h"

namespace reviewlake {

enum class SentimentScheme : std::uint8_t { binary_label, five_class_label, star_rating };

std::string_view to_string(SentimentScheme scheme);
std::optional<SentimentScheme> parse_sentiment_scheme(std::string_view name);

enum class DateFormat : std::uint8_t { iso, iso_datetime, us_slash, long_month, epoch_seconds };

std::string_view to_string(DateFormat format);
std::optional<DateFormat> parse_date_format(std::string_view name);

// The unified fields as raw strings, projected out of one source row.
struct UnifiedDraft {
  std::string name_raw;
  std::string date_raw;
  std::string sentiment_raw;
  std::string upvotes_raw;
  std::string text_raw;
  Source source = Source::amazon;
  std::uint64_t row_number = 0;

  friend bool operator==(const UnifiedDraft&, const UnifiedDraft&) = default;
};

// A cleaned review in the unified six-column schema.
struct UnifiedReview {
  std::string name;
  CivilDate creation_date;
  std::uint8_t sentiment = 0;  // 0 negative, 1 positive
  std::int64_t upvotes = 0;
  std::string review_text;
  Source source = Source::amazon;

  friend bool operator==(const UnifiedReview&, const UnifiedReview&) = default;
  friend auto operator<=>(const UnifiedReview&, const UnifiedReview&) = default;
};

}  // namespace reviewlake
