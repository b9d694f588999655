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


#include "reviewlake/analytics.h"

#include <algorithm>
#include <map>

#include "reviewlake/calendar.h"

namespace reviewlake::analytics {
namespace {

using engine::AggSpec;
using engine::MetricKind;

Value source_value(const UnifiedReview& r) { return std::string(to_string(r.source)); }

bool key_less(const Row& a, const Row& b, std::size_t key_columns) {
  return std::lexicographical_compare(a.begin(), a.begin() + key_columns, b.begin(),
                                      b.begin() + key_columns);
}

constexpr std::array<std::string_view, 3> kSplits = {"all", "negative", "positive"};

}  // namespace

bool is_query_id(std::string_view id) {
  return std::find(kQueryIds.begin(), kQueryIds.end(), id) != kQueryIds.end();
}

std::string LengthBucket::label() const {
  if (!upper) return std::to_string(lower) + "+";
  return "[" + std::to_string(lower) + "," + std::to_string(*upper) + ")";
}

LengthBucket bucket_for(std::size_t length) {
  const auto len = static_cast<std::int64_t>(length);
  if (len >= kOpenBucketStart) return {kOpenBucketStart, std::nullopt};
  const std::int64_t lower = len / kBucketWidth * kBucketWidth;
  return {lower, lower + kBucketWidth};
}

AggTable reviews_per_year(const Dataset& ds, const engine::ExecPolicy& policy) {
  AggSpec<UnifiedReview> spec;
  spec.group_by({"year", "source"},
                [](const UnifiedReview& r) {
                  return GroupKey{std::int64_t{r.creation_date.year}, source_value(r)};
                })
      .count();
  return engine::group_aggregate(ds, spec, "per_year", policy);
}

YoyResult yoy_percent_change(const Dataset& ds, const engine::ExecPolicy& policy) {
  AggSpec<UnifiedReview> spec;
  spec.group_by({"source", "year", "sentiment"},
                [](const UnifiedReview& r) {
                  return GroupKey{source_value(r), std::int64_t{r.creation_date.year},
                                  std::int64_t{r.sentiment}};
                })
      .count();
  const AggTable counts = engine::group_aggregate(ds, spec, "yoy_counts", policy);

  // source -> year -> {negative, positive}
  std::map<std::string, std::map<std::int64_t, std::array<std::int64_t, 2>>> by_source;
  for (const Row& row : counts.rows) {
    const auto& source = std::get<std::string>(row[0]);
    const auto year = std::get<std::int64_t>(row[1]);
    const auto sentiment = std::get<std::int64_t>(row[2]);
    by_source[source][year][sentiment == 0 ? 0 : 1] += std::get<std::int64_t>(row[3]);
  }

  YoyResult result;
  AggTable& table = result.table;
  table.name = "yoy";
  table.columns = {"source", "sentiment_split", "year", "pct_change"};
  table.key_columns = 3;

  for (const auto& [source, years] : by_source) {
    const std::int64_t first = years.begin()->first;
    const std::int64_t last = years.rbegin()->first;
    auto count_of = [&](std::int64_t year, std::size_t split) -> std::int64_t {
      auto it = years.find(year);
      if (it == years.end()) return 0;
      const auto& c = it->second;
      return split == 0 ? c[0] + c[1] : c[split - 1];
    };
    for (std::size_t split = 0; split < kSplits.size(); ++split) {
      const std::string split_name(kSplits[split]);
      std::vector<double> changes;
      for (std::int64_t year = first + 1; year <= last; ++year) {
        const std::int64_t prior = count_of(year - 1, split);
        const std::int64_t current = count_of(year, split);
        if (prior == 0) {
          result.undefined.push_back({source, split_name, static_cast<int>(year)});
          continue;
        }
        const double pct =
            100.0 * static_cast<double>(current - prior) / static_cast<double>(prior);
        changes.push_back(pct);
        table.rows.push_back({source, split_name, year, pct});
      }
      if (!changes.empty()) {
        table.rows.push_back(
            {source, split_name, std::string("median"), engine::detail::median_of(changes)});
      }
    }
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [&](const Row& a, const Row& b) { return key_less(a, b, table.key_columns); });
  return result;
}

AggTable reviews_per_weekday(const Dataset& ds, const engine::ExecPolicy& policy) {
  AggSpec<UnifiedReview> spec;
  spec.group_by({"weekday", "weekday_name", "source"},
                [](const UnifiedReview& r) {
                  const unsigned wd = iso_weekday(r.creation_date);
                  return GroupKey{std::int64_t{wd}, std::string(weekday_name(wd)), source_value(r)};
                })
      .count();
  return engine::group_aggregate(ds, spec, "per_weekday", policy);
}

AggTable reviews_per_month(const Dataset& ds, const engine::ExecPolicy& policy) {
  AggSpec<UnifiedReview> spec;
  spec.group_by({"month", "source"},
                [](const UnifiedReview& r) {
                  return GroupKey{std::int64_t{r.creation_date.month}, source_value(r)};
                })
      .count();
  return engine::group_aggregate(ds, spec, "per_month", policy);
}

AggTable length_upvote_profile(const Dataset& ds, const engine::ExecPolicy& policy) {
  AggSpec<UnifiedReview> spec;
  spec.group_by({"bucket_lower", "bucket"},
                [](const UnifiedReview& r) {
                  const LengthBucket b = bucket_for(r.review_text.size());
                  return GroupKey{b.lower, b.label()};
                })
      .count("review_count")
      .add(MetricKind::mean, "upvotes",
           [](const UnifiedReview& r) { return Value{r.upvotes}; }, "mean_upvotes");
  return engine::group_aggregate(ds, spec, "length_upvotes", policy);
}

AggTable sentiment_profile(const Dataset& ds, const engine::ExecPolicy& policy) {
  AggSpec<UnifiedReview> spec;
  spec.group_by({"source", "sentiment"},
                [](const UnifiedReview& r) {
                  return GroupKey{source_value(r), std::int64_t{r.sentiment}};
                })
      .add(MetricKind::mean, "length",
           [](const UnifiedReview& r) {
             return Value{static_cast<std::int64_t>(r.review_text.size())};
           },
           "mean_length")
      .add(MetricKind::mean, "upvotes",
           [](const UnifiedReview& r) { return Value{r.upvotes}; }, "mean_upvotes")
      .count();
  return engine::group_aggregate(ds, spec, "sentiment_profile", policy);
}

std::optional<AggTable> run_query(std::string_view id, const Dataset& ds,
                                  const engine::ExecPolicy& policy) {
  if (id == "per_year") return reviews_per_year(ds, policy);
  if (id == "yoy") return yoy_percent_change(ds, policy).table;
  if (id == "per_weekday") return reviews_per_weekday(ds, policy);
  if (id == "per_month") return reviews_per_month(ds, policy);
  if (id == "length_upvotes") return length_upvote_profile(ds, policy);
  if (id == "sentiment_profile") return sentiment_profile(ds, policy);
  return std::nullopt;
}

std::vector<std::pair<std::string, AggTable>> run_all(const Dataset& ds,
                                                      const engine::ExecPolicy& policy) {
  std::vector<std::pair<std::string, AggTable>> out;
  out.reserve(kQueryIds.size());
  for (auto id : kQueryIds) out.emplace_back(std::string(id), *run_query(id, ds, policy));
  return out;
}

}  // namespace reviewlake::analytics
