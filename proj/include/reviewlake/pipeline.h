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


// End-to-end runs: configuration, ingest into a lake, queries and reports.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reviewlake/analytics.h"
#include "reviewlake/clean.h"
#include "reviewlake/ingest.h"
#include "reviewlake/report.h"
#include "reviewlake/store.h"
#include "reviewlake/types.h"

namespace reviewlake::pipeline {

enum class InputFormat { csv, jsonl };

struct SourceConfig {
  Source source = Source::amazon;
  std::filesystem::path input_path;
  std::optional<std::filesystem::path> mapping_path;  // bundled mapping when unset
  InputFormat format = InputFormat::csv;
  char delimiter = ',';
};

// Paths in a config file are resolved against the file's directory.
struct RunConfig {
  std::vector<SourceConfig> sources;
  std::optional<std::filesystem::path> stoplist_path;
  std::filesystem::path lake_dir;
  std::filesystem::path report_dir;
  std::size_t partition_count = 0;  // 0: available cores
  std::size_t threads = 0;          // 0: available cores
  std::string created_at;           // empty: see store::resolve_created_at
};

RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

// Throws ConfigError on empty paths, duplicate sources or a zero count.
void validate(const RunConfig& config);

std::size_t effective_partitions(const RunConfig& config);
std::size_t effective_threads(const RunConfig& config);

clean::Stoplist load_stoplist(const RunConfig& config);

// Reads, adapts and cleans every source and writes the lake.
store::LakeManifest run_ingest(const RunConfig& config);

struct EmittedTable {
  std::string query_id;
  std::filesystem::path path;
  std::size_t rows = 0;
};

struct QueryOutput {
  std::vector<EmittedTable> tables;
  std::vector<analytics::UndefinedChange> undefined;  // from the yoy query
};

// `query_id` is one of analytics::kQueryIds or "all".
QueryOutput run_query(const std::filesystem::path& lake_dir, std::string_view query_id,
                      report::TableFormat format, const std::filesystem::path& out_dir,
                      std::size_t partition_count, std::size_t threads);

// CSV table and SVG chart for each of the six queries.
QueryOutput run_report(const std::filesystem::path& lake_dir, const std::filesystem::path& out_dir,
                       std::size_t partition_count, std::size_t threads);

}  // namespace reviewlake::pipeline
