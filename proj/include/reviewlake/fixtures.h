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


// Seeded synthetic source exports. Every file is fully determined by
// (seed, profile, rows_per_source). The generator also reports ground truth:
// the planted parameters, the exact reject plan, and the realised counts of
// the rows that should survive cleaning.
//
// The paper_shaped profile plants:
//   - Saturday/Sunday/Monday weight 3 for yelp and imdb; weekend weight 0.5
//     for amazon.
//   - November/December weight 2 for amazon and imdb.
//   - Cleaned lengths in geometrically decaying 50-character buckets with
//     upvotes growing by bucket.
//   - Negative reviews longer than positive ones except on imdb, and negative
//     reviews upvoted more everywhere.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reviewlake/types.h"

namespace reviewlake::fixtures {

enum class Profile { uniform, paper_shaped };

std::string_view to_string(Profile profile);
std::optional<Profile> parse_profile(std::string_view name);

struct FixtureOptions {
  std::uint64_t seed = 1;
  Profile profile = Profile::uniform;
  // Data rows per file: good rows, planted rejects and blank lines.
  std::uint64_t rows_per_source = 0;
};

struct SourceTruth {
  std::string file_name;
  std::string format;  // "csv" or "jsonl"
  std::uint64_t data_rows = 0;
  std::uint64_t blank_lines = 0;
  std::uint64_t accepted = 0;
  std::map<RejectReason, std::uint64_t> rejects;

  // Planted parameters.
  std::array<double, 7> weekday_weights{};  // Monday first
  std::array<double, 12> month_weights{};
  std::map<int, double> year_weights;
  std::string longer_sentiment;  // "negative" or "positive"

  // Realised over accepted rows.
  std::map<int, std::uint64_t> per_year;
  std::array<std::uint64_t, 12> per_month{};
  std::array<std::uint64_t, 7> per_weekday{};
  std::vector<std::uint64_t> length_buckets;  // by 50-character bucket index
  std::vector<std::uint64_t> bucket_upvote_sums;
  std::array<std::uint64_t, 2> sentiment_count{};
  std::array<std::uint64_t, 2> sentiment_length_sum{};
  std::array<std::uint64_t, 2> sentiment_upvote_sum{};
};

struct GroundTruth {
  FixtureOptions options;
  std::map<Source, SourceTruth> sources;

  std::string to_json() const;
};

struct SourceFile {
  Source source = Source::amazon;
  std::string file_name;
  std::string contents;
};

struct Fixtures {
  std::vector<SourceFile> files;  // amazon, yelp, steam, imdb
  GroundTruth truth;
};

Fixtures generate(const FixtureOptions& options);

// Writes the four source files, ground_truth.json and a config.json that
// ingests them into <dir>/lake.
void write_fixtures(const Fixtures& fixtures, const std::filesystem::path& dir);

}  // namespace reviewlake::fixtures
