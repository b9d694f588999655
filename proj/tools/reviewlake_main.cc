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


// reviewlake: ingest source exports into a lake, query it, render reports and
// generate synthetic fixtures.
//
// Exit codes: 0 success, 1 input/data failure, 2 usage or configuration error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "reviewlake/fixtures.h"
#include "reviewlake/pipeline.h"
#include "reviewlake/store.h"

namespace {

namespace fs = std::filesystem;
using namespace reviewlake;

struct Flags {
  std::string config;
  std::string lake;
  std::string out;
  std::string format = "csv";
  std::string stoplist;
  std::size_t partitions = 0;
  std::size_t threads = 0;
  std::uint64_t seed = 1;
  std::string profile = "uniform";
  std::uint64_t rows = 0;
  std::string query_id = "all";
};

// Config file, then REVIEWLAKE_STOPLIST, then flags.
pipeline::RunConfig resolve_config(const Flags& f, bool need_config) {
  pipeline::RunConfig cfg;
  if (!f.config.empty()) {
    cfg = pipeline::load_config(f.config);
  } else if (need_config) {
    throw ConfigError("--config is required");
  }
  if (const char* env = std::getenv("REVIEWLAKE_STOPLIST"); env && *env) cfg.stoplist_path = env;
  if (!f.stoplist.empty()) cfg.stoplist_path = f.stoplist;
  if (!f.lake.empty()) cfg.lake_dir = f.lake;
  if (!f.out.empty()) cfg.report_dir = f.out;
  if (f.partitions) cfg.partition_count = f.partitions;
  if (f.threads) cfg.threads = f.threads;
  return cfg;
}

void require_dirs(const pipeline::RunConfig& cfg) {
  if (cfg.lake_dir.empty()) throw ConfigError("no lake directory: pass --lake or --config");
  if (cfg.report_dir.empty()) throw ConfigError("no output directory: pass --out or --config");
}

void print_outputs(const pipeline::QueryOutput& out) {
  for (const auto& t : out.tables) {
    std::cout << t.query_id << '\t' << t.rows << " rows\t" << t.path.string() << '\n';
  }
  for (const auto& u : out.undefined) {
    std::cerr << "note: yoy change undefined for " << u.source << '/'
              << u.sentiment_split << ' ' << u.year << " (no reviews in " << u.year - 1 << ")\n";
  }
}

int cmd_ingest(const Flags& f) {
  pipeline::RunConfig cfg = resolve_config(f, true);
  const store::LakeManifest manifest = pipeline::run_ingest(cfg);
  std::cout << store::manifest_to_json(manifest);
  return 0;
}

int cmd_query(const Flags& f) {
  const pipeline::RunConfig cfg = resolve_config(f, false);
  const auto format = report::parse_table_format(f.format);
  if (!format) throw ConfigError("unknown format \"" + f.format + "\"; use csv or json");
  if (f.query_id != "all" && !analytics::is_query_id(f.query_id)) {
    std::string ids;
    for (auto id : analytics::kQueryIds) ids += " " + std::string(id);
    throw ConfigError("unknown query id \"" + f.query_id + "\"; valid ids:" + ids + " all");
  }
  require_dirs(cfg);
  print_outputs(pipeline::run_query(cfg.lake_dir, f.query_id, *format, cfg.report_dir,
                                    pipeline::effective_partitions(cfg),
                                    pipeline::effective_threads(cfg)));
  return 0;
}

int cmd_report(const Flags& f) {
  const pipeline::RunConfig cfg = resolve_config(f, false);
  require_dirs(cfg);
  print_outputs(pipeline::run_report(cfg.lake_dir, cfg.report_dir,
                                     pipeline::effective_partitions(cfg),
                                     pipeline::effective_threads(cfg)));
  return 0;
}

int cmd_gen_fixtures(const Flags& f) {
  if (f.out.empty()) throw ConfigError("--out is required");
  const auto profile = fixtures::parse_profile(f.profile);
  if (!profile) throw ConfigError("unknown profile \"" + f.profile + "\"; use uniform or paper_shaped");
  fixtures::FixtureOptions options;
  options.seed = f.seed;
  options.profile = *profile;
  options.rows_per_source = f.rows;
  fixtures::write_fixtures(fixtures::generate(options), f.out);
  std::cout << "wrote fixtures to " << f.out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Flags f;
  CLI::App app{"Review lake ETL and analytics"};
  app.require_subcommand(1);

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", f.config, "JSON run configuration");
  };
  auto add_exec = [&](CLI::App* cmd) {
    cmd->add_option("--partitions", f.partitions, "Partition count")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", f.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  CLI::App* ingest = app.add_subcommand("ingest", "Parse, clean and store the configured sources");
  add_config(ingest);
  ingest->add_option("--lake", f.lake, "Lake directory");
  ingest->add_option("--stoplist", f.stoplist, "Stoplist file");
  add_exec(ingest);

  CLI::App* query = app.add_subcommand("query", "Run one query or all of them");
  add_config(query);
  query->add_option("id", f.query_id, "Query id or \"all\"");
  query->add_option("--lake", f.lake, "Lake directory");
  query->add_option("--out", f.out, "Output directory");
  query->add_option("--format", f.format, "csv or json");
  add_exec(query);

  CLI::App* rep = app.add_subcommand("report", "Write a CSV and an SVG chart per query");
  add_config(rep);
  rep->add_option("--lake", f.lake, "Lake directory");
  rep->add_option("--out", f.out, "Output directory");
  add_exec(rep);

  CLI::App* gen = app.add_subcommand("gen-fixtures", "Write synthetic source files");
  gen->add_option("--seed", f.seed, "Generator seed");
  gen->add_option("--profile", f.profile, "uniform or paper_shaped");
  gen->add_option("--rows", f.rows, "Data rows per source");
  gen->add_option("--out", f.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(f);
    if (query->parsed()) return cmd_query(f);
    if (rep->parsed()) return cmd_report(f);
    if (gen->parsed()) return cmd_gen_fixtures(f);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
