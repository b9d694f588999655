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


// Cleaning rules that turn a UnifiedDraft into a UnifiedReview: outer
// trimming, null checks, date unification, sentiment binarisation, upvote
// parsing, and review-text normalisation (non-letters stripped, stopwords
// removed).

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "reviewlake/calendar.h"
#include "reviewlake/ingest.h"
#include "reviewlake/review.h"
#include "reviewlake/types.h"

namespace reviewlake::clean {

// Accepted creation dates lie in [kEarliestDate, kLatestDate].
inline constexpr CivilDate kEarliestDate{1970, 1, 1};
inline constexpr CivilDate kLatestDate{2029, 12, 31};

class Stoplist {
 public:
  // One lowercase alphabetic token per line; blank lines and `#` comments are
  // ignored. Any other entry raises MappingError.
  static Stoplist from_text(std::string_view text, std::string source_path = "<bundled>");
  static Stoplist load(const std::filesystem::path& path);
  // The 127-word English list shipped in data/stopwords.txt.
  static const Stoplist& bundled();

  // Case-insensitive membership.
  bool contains(std::string_view token) const;

  const std::vector<std::string>& words() const { return sorted_; }
  const std::string& source_path() const { return source_path_; }
  std::size_t size() const { return sorted_.size(); }
  // SHA-256 hex of the sorted words joined by '\n'.
  const std::string& checksum() const { return checksum_; }

 private:
  std::unordered_set<std::string> set_;
  std::vector<std::string> sorted_;
  std::string source_path_;
  std::string checksum_;
};

std::string trim_outer(std::string_view s);
std::string strip_non_alpha(std::string_view s);
std::string remove_stopwords(std::string_view s, const Stoplist& stops);
// remove_stopwords(strip_non_alpha(trim_outer(s))).
std::string clean_text(std::string_view s, const Stoplist& stops);

// Letters separated by single spaces, no leading or trailing space. Empty
// strings qualify.
bool is_clean_text(std::string_view s);

std::variant<std::uint8_t, RejectReason> map_sentiment(std::string_view raw,
                                                       SentimentScheme scheme);

// The first format whose layout matches decides: a real date inside the
// window, bad_date for an impossible date, date_out_of_range otherwise.
std::variant<CivilDate, RejectReason> normalize_date(std::string_view raw,
                                                     std::span<const DateFormat> formats);

// Decimal digits only; "" means 0.
std::variant<std::int64_t, RejectReason> parse_upvotes(std::string_view raw);

std::variant<UnifiedReview, RejectRecord> clean_review(const UnifiedDraft& draft,
                                                       const Stoplist& stops,
                                                       const ingest::SourceMapping& mapping);

}  // namespace reviewlake::clean
