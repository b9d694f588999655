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


// The on-disk lake: one JSON-lines file per source with the accepted reviews,
// a rejects file, and a manifest that accounts for every input row.
//
//   <dir>/manifest.json
//   <dir>/<source>.jsonl
//   <dir>/rejects.jsonl
//
// Lakes are written into a staging directory next to `dir` and renamed into
// place, so readers never observe a partial lake.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "reviewlake/clean.h"
#include "reviewlake/engine.h"
#include "reviewlake/ingest.h"
#include "reviewlake/review.h"
#include "reviewlake/types.h"

namespace reviewlake::store {

struct SourceCounts {
  std::uint64_t input_rows = 0;  // data rows read, blanks included
  std::uint64_t skipped_blank = 0;
  std::uint64_t accepted = 0;
  std::map<RejectReason, std::uint64_t> rejected_by_reason;

  std::uint64_t rejected() const;
  // accepted + rejected + skipped_blank == input_rows
  bool balanced() const { return accepted + rejected() + skipped_blank == input_rows; }

  friend bool operator==(const SourceCounts&, const SourceCounts&) = default;
};

struct LakeManifest {
  std::string created_at;
  std::map<Source, SourceCounts> per_source;
  std::vector<std::string> record_files;  // relative to the lake directory
  std::string stoplist_checksum;

  std::uint64_t accepted_total() const;
  std::uint64_t rejected_total() const;

  friend bool operator==(const LakeManifest&, const LakeManifest&) = default;
};

struct LakeWriteOptions {
  // Empty: $SOURCE_DATE_EPOCH when set, otherwise the current time.
  std::string created_at;
  std::string stoplist_checksum;
  // Reader statistics per source. Sources absent here are accounted from the
  // records and rejects alone (no blank lines).
  std::map<Source, ingest::ReaderStats> input;
  // Runs after every file is staged and before the rename that publishes it.
  std::function<void(const std::filesystem::path& staging_dir)> before_commit;
};

inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kRejectsFile = "rejects.jsonl";

LakeManifest write_lake(const engine::PartitionedDataset<UnifiedReview>& reviews,
                        std::vector<RejectRecord> rejects, const std::filesystem::path& dir,
                        const LakeWriteOptions& options = {});

LakeManifest read_manifest(const std::filesystem::path& dir);

// Loads and revalidates every record; counts are cross-checked against the
// manifest. With `stops`, review texts must also be free of its stopwords.
engine::PartitionedDataset<UnifiedReview> read_lake(const std::filesystem::path& dir,
                                                    std::size_t partition_count = 1,
                                                    const clean::Stoplist* stops = nullptr);

std::vector<RejectRecord> read_rejects(const std::filesystem::path& dir);

// Union of several lakes, in the given order.
engine::PartitionedDataset<UnifiedReview> merge_lakes(const std::vector<std::filesystem::path>& dirs,
                                                      std::size_t partition_count = 1,
                                                      const clean::Stoplist* stops = nullptr);

std::string manifest_to_json(const LakeManifest& manifest);
LakeManifest manifest_from_json(std::string_view text);

// Compact single-line JSON with fields in schema order.
std::string review_to_json(const UnifiedReview& review);
std::string reject_to_json(const RejectRecord& reject);

// UTC "yyyy-MM-ddTHH:mm:ssZ" for seconds since the epoch.
std::string format_timestamp(std::int64_t epoch_seconds);
std::string resolve_created_at(const std::string& configured);

}  // namespace reviewlake::store
