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


// The fixed query catalog over a unified review dataset. Every query is a pure
// function of the record multiset: partitioning and thread count never change
// the result.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reviewlake/engine.h"
#include "reviewlake/review.h"
#include "reviewlake/table.h"

namespace reviewlake::analytics {

using Dataset = engine::PartitionedDataset<UnifiedReview>;

// Stable ids, in the order run_all emits them.
inline constexpr std::array<std::string_view, 6> kQueryIds = {
    "per_year", "yoy", "per_weekday", "per_month", "length_upvotes", "sentiment_profile"};

bool is_query_id(std::string_view id);

// Review lengths are bucketed in 50-character steps; 2000 and above share one
// open-ended bucket.
inline constexpr std::int64_t kBucketWidth = 50;
inline constexpr std::int64_t kOpenBucketStart = 2000;

struct LengthBucket {
  std::int64_t lower = 0;
  std::optional<std::int64_t> upper;  // exclusive; nullopt for the open bucket

  // "[0,50)" or "2000+".
  std::string label() const;
};

LengthBucket bucket_for(std::size_t length);

// (year, source, count)
AggTable reviews_per_year(const Dataset& ds, const engine::ExecPolicy& policy = {});

struct UndefinedChange {
  std::string source;
  std::string sentiment_split;
  int year = 0;  // the later year of the pair; the prior year had no reviews

  friend bool operator==(const UndefinedChange&, const UndefinedChange&) = default;
};

struct YoyResult {
  // (source, sentiment_split, year, pct_change). sentiment_split is "all",
  // "negative" or "positive". Each source/split also gets a summary row whose
  // year cell is the string "median", holding the median of its yearly changes.
  AggTable table;
  // Year pairs whose prior count is zero; they have no row in `table`.
  std::vector<UndefinedChange> undefined;
};

// 100 * (count[t] - count[t-1]) / count[t-1] for consecutive calendar years
// within each source's year range.
YoyResult yoy_percent_change(const Dataset& ds, const engine::ExecPolicy& policy = {});

// (weekday, weekday_name, source, count); weekday is ISO, Monday = 1.
AggTable reviews_per_weekday(const Dataset& ds, const engine::ExecPolicy& policy = {});

// (month, source, count)
AggTable reviews_per_month(const Dataset& ds, const engine::ExecPolicy& policy = {});

// (bucket_lower, bucket, review_count, mean_upvotes), length in characters of
// the cleaned review text.
AggTable length_upvote_profile(const Dataset& ds, const engine::ExecPolicy& policy = {});

// (source, sentiment, mean_length, mean_upvotes, count)
AggTable sentiment_profile(const Dataset& ds, const engine::ExecPolicy& policy = {});

std::optional<AggTable> run_query(std::string_view id, const Dataset& ds,
                                  const engine::ExecPolicy& policy = {});

// All six tables in kQueryIds order.
std::vector<std::pair<std::string, AggTable>> run_all(const Dataset& ds,
                                                      const engine::ExecPolicy& policy = {});

}  // namespace reviewlake::analytics
