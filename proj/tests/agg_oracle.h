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


// Randomised group-by datasets and a nested-loop reference aggregation used
// by the engine tests and the acceptance run.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "reviewlake/engine.h"
#include "reviewlake/table.h"

namespace reviewlake::testing {

struct AggRecord {
  std::int64_t k1 = 0;
  std::string k2;
  std::int64_t i = 0;
  double d = 0.0;  // k / 4 with small |k|, so every summation order is exact
};

inline std::vector<AggRecord> random_agg_records(std::mt19937_64& rng, std::size_t max_rows) {
  std::uniform_int_distribution<std::size_t> len(0, max_rows);
  std::uniform_int_distribution<std::int64_t> key1(0, 1 + static_cast<std::int64_t>(rng() % 12));
  std::uniform_int_distribution<int> key2(0, static_cast<int>(rng() % 4));
  std::uniform_int_distribution<std::int64_t> ival(-1000, 1000);
  std::uniform_int_distribution<std::int64_t> quarter(-4000, 4000);
  static const char* kNames[] = {"amazon", "imdb", "steam", "yelp", "zeta"};
  std::vector<AggRecord> out(len(rng));
  for (auto& r : out) {
    r.k1 = key1(rng);
    r.k2 = kNames[key2(rng)];
    r.i = ival(rng);
    r.d = static_cast<double>(quarter(rng)) / 4.0;
  }
  return out;
}

inline engine::AggSpec<AggRecord> agg_spec() {
  using engine::MetricKind;
  engine::AggSpec<AggRecord> spec;
  spec.group_by({"k1", "k2"}, [](const AggRecord& r) { return GroupKey{r.k1, r.k2}; })
      .count();
  auto i = [](const AggRecord& r) { return Value{r.i}; };
  auto d = [](const AggRecord& r) { return Value{r.d}; };
  for (MetricKind k : {MetricKind::sum, MetricKind::min, MetricKind::max, MetricKind::mean,
                       MetricKind::median}) {
    spec.add(k, "i", i);
    spec.add(k, "d", d);
  }
  return spec;
}

// Distinct keys by linear search, one full pass over the input per key and
// metric, then rows sorted by key.
inline AggTable oracle_aggregate(const std::vector<AggRecord>& records) {
  std::vector<GroupKey> keys;
  for (const auto& r : records) {
    GroupKey k{r.k1, r.k2};
    bool seen = false;
    for (const auto& e : keys) seen = seen || e == k;
    if (!seen) keys.push_back(k);
  }
  std::sort(keys.begin(), keys.end());

  AggTable t;
  t.columns = {"k1", "k2", "count"};
  for (const char* kind : {"sum", "min", "max", "mean", "median"}) {
    t.columns.push_back(std::string(kind) + "_i");
    t.columns.push_back(std::string(kind) + "_d");
  }
  t.key_columns = 2;
  for (const auto& key : keys) {
    std::vector<std::int64_t> is;
    std::vector<double> ds;
    for (const auto& r : records) {
      if (GroupKey{r.k1, r.k2} == key) {
        is.push_back(r.i);
        ds.push_back(r.d);
      }
    }
    const auto n = static_cast<std::int64_t>(is.size());
    std::int64_t isum = 0;
    for (auto v : is) isum += v;
    double dsum = 0.0;
    for (auto v : ds) dsum += v;
    auto median = [](std::vector<double> xs) {
      std::sort(xs.begin(), xs.end());
      const std::size_t m = xs.size();
      return m % 2 ? xs[m / 2] : (xs[m / 2 - 1] + xs[m / 2]) / 2.0;
    };
    std::vector<double> id(is.begin(), is.end());
    Row row = key;
    row.emplace_back(n);
    row.emplace_back(isum);
    row.emplace_back(dsum);
    row.emplace_back(*std::min_element(is.begin(), is.end()));
    row.emplace_back(*std::min_element(ds.begin(), ds.end()));
    row.emplace_back(*std::max_element(is.begin(), is.end()));
    row.emplace_back(*std::max_element(ds.begin(), ds.end()));
    row.emplace_back(static_cast<double>(isum) / static_cast<double>(n));
    row.emplace_back(dsum / static_cast<double>(n));
    row.emplace_back(median(id));
    row.emplace_back(median(ds));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace reviewlake::testing
