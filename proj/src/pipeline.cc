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


#include "reviewlake/pipeline.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "reviewlake/engine.h"

namespace reviewlake::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::size_t kBatchRows = 65536;

fs::path resolve(const fs::path& base, const std::string& p) {
  if (p.empty()) throw ConfigError("config: empty path");
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

std::size_t get_count(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
    throw ConfigError(std::string("config: \"") + key + "\" must be a positive integer");
  }
  return v.get<std::size_t>();
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
  }
}

InputFormat infer_format(const fs::path& input) {
  const std::string ext = input.extension().string();
  return ext == ".jsonl" || ext == ".ndjson" ? InputFormat::jsonl : InputFormat::csv;
}

struct SourceRun {
  std::vector<UnifiedReview> accepted;
  std::vector<RejectRecord> rejects;
  ingest::ReaderStats stats;
};

template <class Reader>
void drain(Reader& reader, const ingest::SourceMapping& mapping, const clean::Stoplist& stops,
           std::size_t partitions, const engine::ExecPolicy& policy, SourceRun& run) {
  auto transform = [&](const ingest::RawRecord& raw)
      -> std::variant<UnifiedReview, RejectRecord> {
    auto draft = ingest::adapt(raw, mapping);
    if (auto* reject = std::get_if<RejectRecord>(&draft)) return std::move(*reject);
    return clean::clean_review(std::get<UnifiedDraft>(draft), stops, mapping);
  };
  std::vector<ingest::RawRecord> batch;
  auto flush = [&] {
    if (batch.empty()) return;
    auto ds = engine::PartitionedDataset<ingest::RawRecord>::from_records(std::move(batch),
                                                                         partitions);
    batch = {};
    auto result = engine::filter_map(ds, transform, policy);
    auto accepted = std::move(result.accepted).to_vector();
    std::move(accepted.begin(), accepted.end(), std::back_inserter(run.accepted));
    std::move(result.rejects.begin(), result.rejects.end(), std::back_inserter(run.rejects));
  };
  while (auto item = reader.next()) {
    if (auto* reject = std::get_if<RejectRecord>(&*item)) {
      run.rejects.push_back(std::move(*reject));
      continue;
    }
    batch.push_back(std::get<ingest::RawRecord>(std::move(*item)));
    if (batch.size() == kBatchRows) flush();
  }
  flush();
  run.stats = reader.stats();
}

SourceRun ingest_source(const SourceConfig& sc, const clean::Stoplist& stops,
                        std::size_t partitions, const engine::ExecPolicy& policy) {
  ingest::SourceMapping mapping =
      sc.mapping_path ? ingest::load_mapping(*sc.mapping_path) : ingest::default_mapping(sc.source);
  if (mapping.source != sc.source) {
    throw MappingError("mapping for " + std::string(to_string(sc.source)) + " declares source " +
                       std::string(to_string(mapping.source)));
  }
  std::ifstream in(sc.input_path, std::ios::binary);
  if (!in) throw IoError("cannot open input " + sc.input_path.string());
  SourceRun run;
  if (sc.format == InputFormat::jsonl) {
    ingest::JsonlReader reader(in, sc.source);
    drain(reader, mapping, stops, partitions, policy, run);
  } else {
    ingest::CsvReader reader(in, sc.source, sc.delimiter);
    drain(reader, mapping, stops, partitions, policy, run);
  }
  if (in.bad()) throw IoError("read failed for " + sc.input_path.string());
  return run;
}

analytics::Dataset load(const fs::path& lake_dir, std::size_t partitions) {
  if (partitions == 0) throw ConfigError("partition count must be at least 1");
  return store::read_lake(lake_dir, partitions);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

RunConfig parse_config(std::string_view json_text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  check_keys(doc,
             {"sources", "stoplist_path", "lake_dir", "report_dir", "partition_count", "threads",
              "created_at", "neutral_policy"},
             "config");
  RunConfig cfg;
  try {
    if (doc.contains("sources")) {
      if (!doc["sources"].is_array()) throw ConfigError("config: \"sources\" must be an array");
      for (const auto& s : doc["sources"]) {
        if (!s.is_object()) throw ConfigError("config: each source must be an object");
        check_keys(s, {"source", "input_path", "mapping_path", "format", "delimiter"},
                   "config source");
        SourceConfig sc;
        const std::string name = get_string(s, "source", "config source");
        auto source = parse_source(name);
        if (!source) throw ConfigError("config: unknown source \"" + name + "\"");
        sc.source = *source;
        sc.input_path = resolve(base_dir, get_string(s, "input_path", "config source"));
        if (s.contains("mapping_path")) {
          sc.mapping_path = resolve(base_dir, get_string(s, "mapping_path", "config source"));
        }
        sc.format = infer_format(sc.input_path);
        if (s.contains("format")) {
          const std::string f = get_string(s, "format", "config source");
          if (f == "csv") {
            sc.format = InputFormat::csv;
          } else if (f == "jsonl") {
            sc.format = InputFormat::jsonl;
          } else {
            throw ConfigError("config: unknown format \"" + f + "\"");
          }
        }
        if (s.contains("delimiter")) {
          const std::string d = get_string(s, "delimiter", "config source");
          if (d.size() != 1 || d[0] == '"' || d[0] == '\n' || d[0] == '\r') {
            throw ConfigError("config: delimiter must be a single character");
          }
          sc.delimiter = d[0];
        }
        cfg.sources.push_back(std::move(sc));
      }
    }
    if (doc.contains("stoplist_path")) {
      cfg.stoplist_path = resolve(base_dir, get_string(doc, "stoplist_path", "config"));
    }
    if (doc.contains("lake_dir")) cfg.lake_dir = resolve(base_dir, get_string(doc, "lake_dir", "config"));
    if (doc.contains("report_dir")) {
      cfg.report_dir = resolve(base_dir, get_string(doc, "report_dir", "config"));
    }
    if (doc.contains("partition_count")) cfg.partition_count = get_count(doc, "partition_count");
    if (doc.contains("threads")) cfg.threads = get_count(doc, "threads");
    if (doc.contains("created_at")) cfg.created_at = get_string(doc, "created_at", "config");
    if (doc.contains("neutral_policy") && get_string(doc, "neutral_policy", "config") != "drop") {
      throw ConfigError("config: neutral_policy supports only \"drop\"");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

void validate(const RunConfig& config) {
  std::set<Source> seen;
  for (const auto& s : config.sources) {
    if (s.input_path.empty()) throw ConfigError("config: empty input path");
    if (s.mapping_path && s.mapping_path->empty()) throw ConfigError("config: empty mapping path");
    if (!seen.insert(s.source).second) {
      throw ConfigError("config: source " + std::string(to_string(s.source)) + " listed twice");
    }
  }
  if (config.lake_dir.empty()) throw ConfigError("config: lake_dir is required");
  if (config.stoplist_path && config.stoplist_path->empty()) {
    throw ConfigError("config: empty stoplist path");
  }
}

std::size_t effective_partitions(const RunConfig& config) {
  return config.partition_count ? config.partition_count : engine::default_parallelism();
}

std::size_t effective_threads(const RunConfig& config) {
  return config.threads ? config.threads : engine::default_parallelism();
}

clean::Stoplist load_stoplist(const RunConfig& config) {
  if (config.stoplist_path) return clean::Stoplist::load(*config.stoplist_path);
  return clean::Stoplist::bundled();
}

store::LakeManifest run_ingest(const RunConfig& config) {
  validate(config);
  const clean::Stoplist stops = load_stoplist(config);
  const std::size_t partitions = effective_partitions(config);
  const std::size_t threads = effective_threads(config);
  const std::size_t n = config.sources.size();
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, n));
  const engine::ExecPolicy inner{std::max<std::size_t>(1, threads / workers)};

  std::vector<SourceRun> runs(n);
  engine::detail::parallel_for(n, workers, [&](std::size_t i) {
    runs[i] = ingest_source(config.sources[i], stops, partitions, inner);
  });

  std::vector<engine::PartitionedDataset<UnifiedReview>> parts;
  std::vector<RejectRecord> rejects;
  store::LakeWriteOptions options;
  options.created_at = config.created_at;
  options.stoplist_checksum = stops.checksum();
  for (std::size_t i = 0; i < n; ++i) {
    parts.push_back(engine::PartitionedDataset<UnifiedReview>::from_records(
        std::move(runs[i].accepted), partitions));
    std::move(runs[i].rejects.begin(), runs[i].rejects.end(), std::back_inserter(rejects));
    options.input[config.sources[i].source] = runs[i].stats;
  }
  auto all = engine::union_all(parts, partitions);
  return store::write_lake(all, std::move(rejects), config.lake_dir, options);
}

QueryOutput run_query(const fs::path& lake_dir, std::string_view query_id,
                      report::TableFormat format, const fs::path& out_dir,
                      std::size_t partition_count, std::size_t threads) {
  if (query_id != "all" && !analytics::is_query_id(query_id)) {
    std::string ids;
    for (auto id : analytics::kQueryIds) ids += " " + std::string(id);
    throw ConfigError("unknown query id \"" + std::string(query_id) + "\"; valid ids:" + ids +
                      " all");
  }
  const analytics::Dataset ds = load(lake_dir, partition_count);
  const engine::ExecPolicy policy{std::max<std::size_t>(1, threads)};
  ensure_dir(out_dir);
  QueryOutput out;
  for (auto id : analytics::kQueryIds) {
    if (query_id != "all" && query_id != id) continue;
    AggTable table;
    if (id == "yoy") {
      auto yoy = analytics::yoy_percent_change(ds, policy);
      table = std::move(yoy.table);
      out.undefined = std::move(yoy.undefined);
    } else {
      table = *analytics::run_query(id, ds, policy);
    }
    const fs::path path = out_dir / (std::string(id) + "." + std::string(report::extension(format)));
    report::emit_table(table, format, path);
    out.tables.push_back({std::string(id), path, table.rows.size()});
  }
  return out;
}

QueryOutput run_report(const fs::path& lake_dir, const fs::path& out_dir,
                       std::size_t partition_count, std::size_t threads) {
  const analytics::Dataset ds = load(lake_dir, partition_count);
  const engine::ExecPolicy policy{std::max<std::size_t>(1, threads)};
  ensure_dir(out_dir);
  QueryOutput out;
  for (auto id : analytics::kQueryIds) {
    AggTable table;
    if (id == "yoy") {
      auto yoy = analytics::yoy_percent_change(ds, policy);
      table = std::move(yoy.table);
      out.undefined = std::move(yoy.undefined);
    } else {
      table = *analytics::run_query(id, ds, policy);
    }
    const std::string stem(id);
    const fs::path csv = out_dir / (stem + ".csv");
    report::emit_table(table, report::TableFormat::csv, csv);
    out.tables.push_back({stem, csv, table.rows.size()});
    const fs::path svg = out_dir / (stem + ".svg");
    report::emit_bar_chart(*report::default_chart(id), table, svg);
    out.tables.push_back({stem, svg, table.rows.size()});
  }
  return out;
}

}  // namespace reviewlake::pipeline
