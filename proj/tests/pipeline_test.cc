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


#include <gtest/gtest.h>

#include <set>
#include <string>

#include "json.hpp"
#include "reviewlake/fixtures.h"
#include "reviewlake/pipeline.h"
#include "test_support.h"

namespace reviewlake::pipeline {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

RunConfig fixture_config(const TempDir& tmp, fixtures::Profile profile, std::uint64_t rows,
                         fixtures::GroundTruth* truth = nullptr) {
  auto f = fixtures::generate({1, profile, rows});
  fixtures::write_fixtures(f, tmp.path());
  if (truth) *truth = f.truth;
  return load_config(tmp / "config.json");
}

std::set<std::string> listing(const fs::path& dir) {
  std::set<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out.insert(e.path().filename().string());
  return out;
}

TEST(Config, ParsesAndResolvesPaths) {
  RunConfig c = parse_config(R"({
    "sources": [{"source": "yelp", "input_path": "in/yelp.csv"},
                {"source": "imdb", "input_path": "/abs/imdb.jsonl", "mapping_path": "m.json"},
                {"source": "steam", "input_path": "s.txt", "format": "csv", "delimiter": ";"}],
    "stoplist_path": "stop.txt", "lake_dir": "lake", "report_dir": "out",
    "partition_count": 7, "threads": 2, "created_at": "2026-01-01T00:00:00Z",
    "neutral_policy": "drop"})",
                             "/base");
  ASSERT_EQ(c.sources.size(), 3u);
  EXPECT_EQ(c.sources[0].input_path, fs::path("/base/in/yelp.csv"));
  EXPECT_EQ(c.sources[0].format, InputFormat::csv);
  EXPECT_EQ(c.sources[1].input_path, fs::path("/abs/imdb.jsonl"));
  EXPECT_EQ(c.sources[1].format, InputFormat::jsonl);
  EXPECT_EQ(*c.sources[1].mapping_path, fs::path("/base/m.json"));
  EXPECT_EQ(c.sources[2].delimiter, ';');
  EXPECT_EQ(*c.stoplist_path, fs::path("/base/stop.txt"));
  EXPECT_EQ(c.lake_dir, fs::path("/base/lake"));
  EXPECT_EQ(c.partition_count, 7u);
  EXPECT_EQ(effective_threads(c), 2u);
  EXPECT_NO_THROW(validate(c));
}

TEST(Config, Errors) {
  for (const char* bad : {
           "[]", "{", R"({"unknown": 1})", R"({"partition_count": 0})",
           R"({"partition_count": "4"})", R"({"sources": [{"source": "ebay", "input_path": "x"}]})",
           R"({"sources": [{"source": "yelp"}]})", R"({"sources": [{"source": "yelp", "input_path": ""}]})",
           R"({"neutral_policy": "keep"})", R"({"sources": [{"source": "yelp", "input_path": "x", "delimiter": ",,"}]})"}) {
    EXPECT_THROW(parse_config(bad, ""), ConfigError) << bad;
  }
  RunConfig dup = parse_config(R"({"lake_dir": "l", "sources": [{"source": "yelp", "input_path": "a"},
                                  {"source": "yelp", "input_path": "b"}]})",
                               "");
  EXPECT_THROW(validate(dup), ConfigError);
  EXPECT_THROW(validate(parse_config("{}", "")), ConfigError);  // no lake_dir
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Ingest, ManifestMatchesGeneratorPlan) {
  TempDir tmp;
  fixtures::GroundTruth truth;
  RunConfig cfg = fixture_config(tmp, fixtures::Profile::paper_shaped, 4000, &truth);
  cfg.partition_count = 5;
  cfg.threads = 2;
  const store::LakeManifest m = run_ingest(cfg);
  ASSERT_EQ(m.per_source.size(), 4u);
  for (const auto& [source, c] : m.per_source) {
    const auto& t = truth.sources.at(source);
    EXPECT_EQ(c.accepted, t.accepted);
    EXPECT_EQ(c.rejected_by_reason, t.rejects);
    EXPECT_EQ(c.skipped_blank, t.blank_lines);
    EXPECT_EQ(c.input_rows, 4000u);
    EXPECT_TRUE(c.balanced());
  }
  EXPECT_EQ(m.created_at, "2026-01-01T00:00:00Z");
  EXPECT_EQ(m.stoplist_checksum, clean::Stoplist::bundled().checksum());
  EXPECT_EQ(store::read_lake(cfg.lake_dir, 3).size(), m.accepted_total());
}

TEST(Ingest, UniformMonthCountsMatchGroundTruth) {
  TempDir tmp;
  fixtures::GroundTruth truth;
  RunConfig cfg = fixture_config(tmp, fixtures::Profile::uniform, 3000, &truth);
  run_ingest(cfg);
  run_query(cfg.lake_dir, "per_month", report::TableFormat::json, tmp / "q", 2, 1);
  auto rows = nlohmann::json::parse(testing::read_file(tmp / "q" / "per_month.json"));
  std::map<std::pair<std::string, int>, std::uint64_t> got;
  for (const auto& r : rows) got[{r["source"], r["month"]}] = r["count"];
  for (const auto& [source, t] : truth.sources) {
    for (int m = 1; m <= 12; ++m) {
      const auto it = got.find({std::string(to_string(source)), m});
      EXPECT_EQ(it == got.end() ? 0 : it->second, t.per_month[m - 1]);
    }
  }
}

TEST(Ingest, MissingInputNamesPath) {
  TempDir tmp;
  RunConfig cfg = fixture_config(tmp, fixtures::Profile::uniform, 10);
  cfg.sources[2].input_path = tmp / "missing.csv";
  try {
    run_ingest(cfg);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("missing.csv"), std::string::npos);
  }
  EXPECT_FALSE(fs::exists(cfg.lake_dir));
}

TEST(Ingest, CorruptMappingIsMappingError) {
  TempDir tmp;
  RunConfig cfg = fixture_config(tmp, fixtures::Profile::uniform, 10);
  testing::write_file(tmp / "bad.json", "{\"source\": \"yelp\"}");
  cfg.sources[1].mapping_path = tmp / "bad.json";
  EXPECT_THROW(run_ingest(cfg), MappingError);
  cfg.sources[1].mapping_path = tmp / "absent.json";
  EXPECT_THROW(run_ingest(cfg), Error);
}

TEST(Ingest, CustomStoplist) {
  TempDir tmp;
  RunConfig cfg = fixture_config(tmp, fixtures::Profile::uniform, 200);
  testing::write_file(tmp / "stops.txt", "# tiny\nthe\ngood\n");
  cfg.stoplist_path = tmp / "stops.txt";
  auto m = run_ingest(cfg);
  EXPECT_EQ(m.stoplist_checksum, clean::Stoplist::load(tmp / "stops.txt").checksum());
  for (const auto& r : store::read_lake(cfg.lake_dir).to_vector()) {
    EXPECT_EQ(r.review_text.find("good"), std::string::npos);
  }
}

TEST(Query, PartitionCountDoesNotChangeOutput) {
  TempDir tmp;
  RunConfig cfg = fixture_config(tmp, fixtures::Profile::paper_shaped, 2000);
  run_ingest(cfg);
  run_query(cfg.lake_dir, "all", report::TableFormat::csv, tmp / "p1", 1, 1);
  auto out = run_query(cfg.lake_dir, "all", report::TableFormat::csv, tmp / "p64", 64, 3);
  ASSERT_EQ(out.tables.size(), 6u);
  EXPECT_EQ(listing(tmp / "p1").size(), 6u);
  for (const auto& t : out.tables) {
    EXPECT_EQ(testing::read_file(t.path), testing::read_file(tmp / "p1" / t.path.filename()))
        << t.query_id;
  }
}

TEST(Query, SingleIdAndUnknownId) {
  TempDir tmp;
  RunConfig cfg = fixture_config(tmp, fixtures::Profile::uniform, 100);
  run_ingest(cfg);
  auto out = run_query(cfg.lake_dir, "yoy", report::TableFormat::json, tmp / "q", 1, 1);
  ASSERT_EQ(out.tables.size(), 1u);
  EXPECT_EQ(listing(tmp / "q"), std::set<std::string>{"yoy.json"});
  EXPECT_THROW(run_query(cfg.lake_dir, "bogus", report::TableFormat::csv, tmp / "q", 1, 1),
               ConfigError);
}

TEST(Report, TwelveFilesAndRerunIsIdentical) {
  TempDir tmp;
  RunConfig cfg = fixture_config(tmp, fixtures::Profile::paper_shaped, 1000);
  run_ingest(cfg);
  run_report(cfg.lake_dir, tmp / "r1", 2, 1);
  run_report(cfg.lake_dir, tmp / "r2", 7, 2);
  const auto files = listing(tmp / "r1");
  EXPECT_EQ(files.size(), 12u);
  for (const auto& f : files) {
    EXPECT_EQ(testing::read_file(tmp / "r1" / f), testing::read_file(tmp / "r2" / f)) << f;
  }
}

TEST(Report, EmptyLakeChartsSayNoData) {
  TempDir tmp;
  RunConfig cfg = fixture_config(tmp, fixtures::Profile::uniform, 0);
  run_ingest(cfg);
  run_report(cfg.lake_dir, tmp / "r", 1, 1);
  int svgs = 0;
  for (const auto& f : listing(tmp / "r")) {
    if (fs::path(f).extension() != ".svg") continue;
    ++svgs;
    EXPECT_NE(testing::read_file(tmp / "r" / f).find("no data"), std::string::npos) << f;
  }
  EXPECT_EQ(svgs, 6);
}

}  // namespace
}  // namespace reviewlake::pipeline
