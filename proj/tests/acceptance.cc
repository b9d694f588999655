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


// Runs every acceptance criterion and prints one PASS/FAIL line per
// criterion. Exit status is non-zero when any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "agg_oracle.h"
#include "reviewlake/analytics.h"
#include "reviewlake/clean.h"
#include "reviewlake/fixtures.h"
#include "reviewlake/hash.h"
#include "reviewlake/pipeline.h"
#include "reviewlake/report.h"
#include "reviewlake/store.h"
#include "test_support.h"
#include "weekday_table.h"

namespace {

namespace fs = std::filesystem;
using namespace reviewlake;
using Clock = std::chrono::steady_clock;

constexpr int kOracleCases = 1000;
constexpr std::size_t kOracleMaxRows = 1000;
constexpr double kOracleTimeLimitS = 60.0;
constexpr std::uint64_t kFixtureRows = 10000;
constexpr std::uint64_t kFixtureSeed = 1;
constexpr std::size_t kPartitionSweep[] = {1, 2, 7, 64};
constexpr int kCleaningCases = 10000;
constexpr double kYoyTolerance = 1e-9;
constexpr std::uint64_t kThroughputRowsPerSource = 250000;  // 1,000,000 in total
constexpr double kThroughputLimitS = 60.0;
constexpr double kMinSpeedup = 1.5;
constexpr unsigned kSpeedupCores = 4;
constexpr std::size_t kThroughputPartitions = 8;

enum class Status { pass, fail, unverified };

struct Outcome {
  Status status;
  std::string detail;
};

int failures = 0;

void print_outcome(int id, const std::string& name, const Outcome& o) {
  const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "UNVERIFIED";
  if (o.status == Status::fail) ++failures;
  std::printf("[%s] %2d %s: %s\n", tag, id, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

void run(int id, const std::string& name, const std::function<Outcome()>& fn) {
  try {
    print_outcome(id, name, fn());
  } catch (const std::exception& e) {
    print_outcome(id, name, {Status::fail, std::string("exception: ") + e.what()});
  }
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

// Hash of every regular file under `dir`, keyed by relative path.
std::map<std::string, std::string> tree_hashes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    out[fs::relative(e.path(), dir).string()] = sha256_hex(testing::read_file(e.path()));
  }
  return out;
}

struct FixtureRun {
  fixtures::GroundTruth truth;
  store::LakeManifest manifest;
  fs::path dir;
  std::map<std::string, AggTable> tables;
};

FixtureRun ingest_fixture(const fs::path& dir, fixtures::Profile profile, std::uint64_t rows) {
  FixtureRun run;
  auto fx = fixtures::generate({kFixtureSeed, profile, rows});
  fixtures::write_fixtures(fx, dir);
  run.truth = fx.truth;
  run.dir = dir;
  pipeline::RunConfig cfg = pipeline::load_config(dir / "config.json");
  run.manifest = pipeline::run_ingest(cfg);
  const auto ds = store::read_lake(cfg.lake_dir, 4);
  for (auto& [id, t] : analytics::run_all(ds, {1})) run.tables[id] = std::move(t);
  return run;
}

std::string source_of(const Row& r, std::size_t col) { return std::get<std::string>(r[col]); }

// ---------------------------------------------------------------------------

Outcome oracle_equivalence() {
  std::mt19937_64 rng(20260101);
  const auto t0 = Clock::now();
  std::size_t largest = 0;
  for (int i = 0; i < kOracleCases; ++i) {
    auto records = testing::random_agg_records(rng, kOracleMaxRows);
    largest = std::max(largest, records.size());
    const std::size_t parts = kPartitionSweep[i % 4];
    const std::size_t threads = 1 + static_cast<std::size_t>(i % 3);
    const AggTable got = engine::group_aggregate(
        engine::PartitionedDataset<testing::AggRecord>::from_records(records, parts),
        testing::agg_spec(), "", {threads});
    if (!(got == testing::oracle_aggregate(records))) {
      return {Status::fail, "dataset " + std::to_string(i) + " (" + std::to_string(records.size()) +
                                " rows, " + std::to_string(parts) + " partitions) differs from oracle"};
    }
  }
  const double s = seconds_since(t0);
  return {s < kOracleTimeLimitS ? Status::pass : Status::fail,
          std::to_string(kOracleCases) + " datasets up to " + std::to_string(largest) +
              " rows match the nested-loop oracle exactly in " + fmt("%.2f", s) + " s (limit " +
              fmt("%.0f", kOracleTimeLimitS) + " s)"};
}

Outcome partition_invariance(const FixtureRun& fx) {
  std::map<std::string, std::string> reference;
  for (std::size_t parts : kPartitionSweep) {
    const fs::path out = fx.dir / ("sweep-" + std::to_string(parts));
    pipeline::run_query(fx.dir / "lake", "all", report::TableFormat::csv, out, parts,
                        parts == 1 ? 1 : 4);
    auto hashes = tree_hashes(out);
    if (hashes.size() != 6) return {Status::fail, "expected 6 tables, got " + std::to_string(hashes.size())};
    if (reference.empty()) {
      reference = hashes;
    } else if (hashes != reference) {
      return {Status::fail, "outputs at " + std::to_string(parts) + " partitions differ from 1 partition"};
    }
  }
  return {Status::pass, "6 query outputs byte-identical across partition counts 1, 2, 7, 64"};
}

Outcome cleaning_properties() {
  static const std::vector<std::string> kPieces = {
      "The", "a", "AN", "is", "review", "Great", "  ", " ", "\t", "\n", "\"", "'", "!!", "10/10",
      "2019", "-", "\xC3\xA9", "\xF0\x9F\x98\x80", "\xFF\xFE", "ok", "x", "_", "WOW", "of"};
  const std::regex clean_form("^([A-Za-z]+( [A-Za-z]+)*)?$");
  const clean::Stoplist& stops = clean::Stoplist::bundled();
  std::mt19937_64 rng(33);
  for (int i = 0; i < kCleaningCases; ++i) {
    std::string s;
    for (std::size_t k = 0, n = rng() % 20; k < n; ++k) {
      if (rng() % 5 == 0) {
        s.push_back(static_cast<char>(rng() % 256));
      } else {
        s += kPieces[rng() % kPieces.size()];
      }
    }
    const std::string once = clean::clean_text(s, stops);
    if (clean::clean_text(once, stops) != once) return {Status::fail, "not idempotent on case " + std::to_string(i)};
    if (!std::regex_match(once, clean_form)) return {Status::fail, "bad alphabet on case " + std::to_string(i)};
    std::istringstream words(once);
    for (std::string w; words >> w;) {
      if (stops.contains(w)) return {Status::fail, "stopword survived on case " + std::to_string(i)};
    }
  }
  return {Status::pass, std::to_string(kCleaningCases) +
                            " random strings: idempotent, letters and single spaces only, no stopwords"};
}

std::string conservation_check(const FixtureRun& fx) {
  for (const auto& [source, c] : fx.manifest.per_source) {
    const auto& t = fx.truth.sources.at(source);
    if (c.accepted + c.rejected() + c.skipped_blank != c.input_rows) return "manifest unbalanced";
    if (c.input_rows != t.data_rows) {
      return std::string(to_string(source)) + ": manifest counts " + std::to_string(c.input_rows) +
             " rows, file holds " + std::to_string(t.data_rows);
    }
    if (t.format == "jsonl") {
      const std::string body = testing::read_file(fx.dir / t.file_name);
      const auto lines = static_cast<std::uint64_t>(std::count(body.begin(), body.end(), '\n'));
      if (lines != c.input_rows) return "jsonl physical line count differs";
    }
    if (c.accepted != t.accepted || c.rejected_by_reason != t.rejects) {
      return std::string(to_string(source)) + ": counts differ from the generator plan";
    }
  }
  return {};
}

Outcome conservation(const std::vector<const FixtureRun*>& runs) {
  std::uint64_t rows = 0;
  for (const auto* fx : runs) {
    if (auto err = conservation_check(*fx); !err.empty()) return {Status::fail, err};
    for (const auto& [s, c] : fx->manifest.per_source) rows += c.input_rows;
  }
  return {Status::pass, std::to_string(runs.size()) + " fixture runs, " + std::to_string(rows) +
                            " input rows: accepted + rejected + blank equals input per source"};
}

Outcome weekday_recovery(const FixtureRun& fx) {
  std::map<std::string, std::array<std::int64_t, 8>> counts;
  for (const auto& r : fx.tables.at("per_weekday").rows) {
    counts[source_of(r, 2)][std::get<std::int64_t>(r[0])] = std::get<std::int64_t>(r[3]);
  }
  std::string detail;
  for (const char* s : {"yelp", "imdb"}) {
    std::vector<int> days = {1, 2, 3, 4, 5, 6, 7};
    std::sort(days.begin(), days.end(), [&](int a, int b) { return counts[s][a] > counts[s][b]; });
    const std::set<int> top(days.begin(), days.begin() + 3);
    if (top != std::set<int>{1, 6, 7}) return {Status::fail, std::string(s) + " top-3 weekdays are not Sat/Sun/Mon"};
  }
  const auto& a = counts["amazon"];
  const double weekday_mean = (a[1] + a[2] + a[3] + a[4] + a[5]) / 5.0;
  if (!(a[6] < weekday_mean && a[7] < weekday_mean)) {
    return {Status::fail, "amazon weekend counts not below weekday mean"};
  }
  return {Status::pass, "Sat/Sun/Mon top-3 for yelp and imdb; amazon Sat " + std::to_string(a[6]) +
                            ", Sun " + std::to_string(a[7]) + " < weekday mean " +
                            fmt("%.1f", weekday_mean)};
}

Outcome month_recovery(const FixtureRun& fx) {
  std::map<std::string, std::array<std::int64_t, 13>> counts;
  for (const auto& r : fx.tables.at("per_month").rows) {
    counts[source_of(r, 1)][std::get<std::int64_t>(r[0])] = std::get<std::int64_t>(r[2]);
  }
  for (const char* s : {"amazon", "imdb"}) {
    std::vector<int> months(12);
    std::iota(months.begin(), months.end(), 1);
    std::sort(months.begin(), months.end(), [&](int a, int b) { return counts[s][a] > counts[s][b]; });
    if (std::set<int>(months.begin(), months.begin() + 2) != std::set<int>{11, 12}) {
      return {Status::fail, std::string(s) + " top-2 months are not Nov/Dec"};
    }
  }
  return {Status::pass, "Nov and Dec are the top-2 months for amazon and imdb"};
}

Outcome length_recovery(const FixtureRun& fx) {
  const AggTable& t = fx.tables.at("length_upvotes");
  std::map<std::int64_t, std::pair<std::int64_t, double>> buckets;
  for (const auto& r : t.rows) {
    buckets[std::get<std::int64_t>(r[0])] = {std::get<std::int64_t>(r[2]), std::get<double>(r[3])};
  }
  if (buckets.size() < 10) return {Status::fail, "fewer than 10 populated buckets"};
  const std::int64_t first = buckets.begin()->first;
  const std::int64_t last = buckets.rbegin()->first;
  std::int64_t prev_count = buckets.begin()->second.first;
  for (std::int64_t b = first; b <= last; b += analytics::kBucketWidth) {
    const auto it = buckets.find(b);
    const std::int64_t n = it == buckets.end() ? 0 : it->second.first;
    if (n > prev_count) return {Status::fail, "count rises at bucket " + std::to_string(b)};
    prev_count = n;
  }
  double prev_mean = -1;
  int seen = 0;
  for (const auto& [b, v] : buckets) {
    if (seen++ == 10) break;
    if (v.second < prev_mean) return {Status::fail, "mean upvotes fall at bucket " + std::to_string(b)};
    prev_mean = v.second;
  }
  return {Status::pass, std::to_string(buckets.size()) +
                            " populated buckets: counts non-increasing, mean upvotes non-decreasing over first 10"};
}

Outcome sentiment_recovery(const FixtureRun& fx) {
  std::map<std::string, std::array<std::pair<double, double>, 2>> prof;
  for (const auto& r : fx.tables.at("sentiment_profile").rows) {
    prof[source_of(r, 0)][std::get<std::int64_t>(r[1])] = {std::get<double>(r[2]), std::get<double>(r[3])};
  }
  for (const char* s : {"amazon", "yelp", "steam", "imdb"}) {
    const auto& neg = prof[s][0];
    const auto& pos = prof[s][1];
    const bool imdb = std::string(s) == "imdb";
    if (imdb ? !(pos.first > neg.first) : !(neg.first > pos.first)) {
      return {Status::fail, std::string(s) + " mean length ordering wrong"};
    }
    if (!(neg.second > pos.second)) return {Status::fail, std::string(s) + " mean upvote ordering wrong"};
  }
  return {Status::pass,
          "negative longer for amazon/yelp/steam, positive longer for imdb; negative upvoted more everywhere"};
}

Outcome yoy_arithmetic() {
  std::vector<UnifiedReview> v;
  const std::map<int, int> planted = {{2016, 100}, {2017, 150}, {2018, 120}, {2019, 180}};
  for (const auto& [year, n] : planted) {
    for (int i = 0; i < n; ++i) {
      v.push_back(testing::review(Source::yelp, {year, 1 + static_cast<unsigned>(i % 12), 3},
                                  static_cast<std::uint8_t>(i % 2), 0, "word"));
    }
  }
  auto r = analytics::yoy_percent_change(analytics::Dataset::from_records(v, 7));
  std::vector<double> pct;
  double median = NAN;
  for (const auto& row : r.table.rows) {
    if (std::get<std::string>(row[1]) != "all") continue;
    if (std::holds_alternative<std::string>(row[2])) {
      median = std::get<double>(row[3]);
    } else {
      pct.push_back(std::get<double>(row[3]));
    }
  }
  const std::vector<double> want = {50.0, -20.0, 50.0};
  bool ok = pct.size() == want.size() && std::fabs(median - 50.0) <= kYoyTolerance;
  for (std::size_t i = 0; ok && i < want.size(); ++i) ok = std::fabs(pct[i] - want[i]) <= kYoyTolerance;
  std::ostringstream d;
  d << "counts {100,150,120,180} -> {";
  for (std::size_t i = 0; i < pct.size(); ++i) d << (i ? "," : "") << fmt("%+.6f", pct[i]);
  d << "}, median " << fmt("%+.6f", median) << " (tolerance 1e-9)";
  return {ok ? Status::pass : Status::fail, d.str()};
}

Outcome calendar() {
  int ok = 0;
  for (const auto& k : testing::kKnownWeekdays) ok += iso_weekday(k.date) == k.iso_weekday;
  return {ok == 20 ? Status::pass : Status::fail,
          std::to_string(ok) + "/20 hand-verified dates including 2000-02-29 and 2024-02-29"};
}

double timed_run(const fs::path& fx, const std::string& tag, unsigned threads) {
  const fs::path lake = fx / ("lake-" + tag);
  const fs::path out = fx / ("out-" + tag);
  const std::string common = " --partitions " + std::to_string(kThroughputPartitions) +
                             " --threads " + std::to_string(threads) + " > /dev/null";
  const auto t0 = Clock::now();
  if (shell(quoted(REVIEWLAKE_CLI) + " ingest --config " + quoted(fx / "config.json") + " --lake " +
            quoted(lake) + common) != 0) {
    throw std::runtime_error("ingest failed");
  }
  if (shell(quoted(REVIEWLAKE_CLI) + " query all --lake " + quoted(lake) + " --out " + quoted(out) +
            common) != 0) {
    throw std::runtime_error("query failed");
  }
  return seconds_since(t0);
}

Outcome throughput(const fs::path& dir, FixtureRun& run_out) {
  auto fx = fixtures::generate({kFixtureSeed, fixtures::Profile::paper_shaped, kThroughputRowsPerSource});
  fixtures::write_fixtures(fx, dir);
  const double serial = timed_run(dir, "t1", 1);
  const double parallel = timed_run(dir, "t4", 4);
  run_out.truth = fx.truth;
  run_out.dir = dir;
  run_out.manifest = store::read_manifest(dir / "lake-t4");
  if (store::read_manifest(dir / "lake-t1").per_source != run_out.manifest.per_source) {
    return {Status::fail, "thread counts produced different manifests"};
  }
  const double speedup = serial / parallel;
  const unsigned cores = std::thread::hardware_concurrency();
  std::string detail = std::to_string(4 * kThroughputRowsPerSource) + " rows: --threads 1 " +
                       fmt("%.2f", serial) + " s, --threads 4 " + fmt("%.2f", parallel) +
                       " s (limit " + fmt("%.0f", kThroughputLimitS) + " s), speedup " +
                       fmt("%.2f", speedup) + "x (need " + fmt("%.1f", kMinSpeedup) + "x)";
  if (std::max(serial, parallel) >= kThroughputLimitS) return {Status::fail, detail};
  if (cores < kSpeedupCores) {
    return {Status::unverified, detail + "; time limit met, speedup cannot be measured on " +
                                    std::to_string(cores) + " hardware thread(s)"};
  }
  return {speedup >= kMinSpeedup ? Status::pass : Status::fail, detail};
}

Outcome determinism(const fs::path& dir) {
  std::map<std::string, std::string> first;
  for (int round = 0; round < 2; ++round) {
    const fs::path run = dir / ("run" + std::to_string(round));
    const std::string cli = quoted(REVIEWLAKE_CLI);
    const std::string cfg = " --config " + quoted(run / "config.json");
    if (shell(cli + " gen-fixtures --seed 1 --profile paper_shaped --rows 10000 --out " + quoted(run) +
              " > /dev/null") != 0 ||
        shell(cli + " ingest" + cfg + " > /dev/null") != 0 ||
        shell(cli + " query all" + cfg + " --out " + quoted(run / "tables") + " > /dev/null") != 0 ||
        shell(cli + " report" + cfg + " > /dev/null 2>&1") != 0) {
      return {Status::fail, "pipeline run failed"};
    }
    auto hashes = tree_hashes(run);
    if (round == 0) {
      first = std::move(hashes);
    } else if (hashes != first) {
      for (const auto& [f, h] : hashes) {
        if (first[f] != h) return {Status::fail, "file differs between runs: " + f};
      }
      return {Status::fail, "file sets differ between runs"};
    }
  }
  std::size_t svgs = 0;
  for (const auto& [f, h] : first) svgs += fs::path(f).extension() == ".svg";
  return {Status::pass, std::to_string(first.size()) + " files (lake, tables, " + std::to_string(svgs) +
                            " SVGs) have identical SHA-256 across two runs"};
}

}  // namespace

int main() {
  testing::TempDir tmp;
  std::printf("acceptance run, %u hardware thread(s)\n", std::thread::hardware_concurrency());

  run(1, "oracle equivalence", oracle_equivalence);

  FixtureRun paper;
  FixtureRun uniform;
  FixtureRun large;
  bool have_paper = false;
  try {
    paper = ingest_fixture(tmp / "paper", fixtures::Profile::paper_shaped, kFixtureRows);
    uniform = ingest_fixture(tmp / "uniform", fixtures::Profile::uniform, kFixtureRows);
    have_paper = true;
  } catch (const std::exception& e) {
    std::printf("fixture ingest failed: %s\n", e.what());
  }
  auto needs_fixture = [&](const std::function<Outcome()>& fn) {
    return [&, fn] { return have_paper ? fn() : Outcome{Status::fail, "fixture unavailable"}; };
  };

  run(2, "partition invariance", needs_fixture([&] { return partition_invariance(paper); }));
  run(3, "cleaning idempotence and alphabet", cleaning_properties);
  Outcome throughput_outcome{Status::fail, "not run"};
  try {
    throughput_outcome = throughput(tmp / "large", large);
  } catch (const std::exception& e) {
    throughput_outcome = {Status::fail, std::string("exception: ") + e.what()};
  }
  run(4, "conservation", needs_fixture([&] {
        std::vector<const FixtureRun*> runs = {&paper, &uniform};
        if (!large.dir.empty()) runs.push_back(&large);
        return conservation(runs);
      }));
  run(5, "weekday recovery", needs_fixture([&] { return weekday_recovery(paper); }));
  run(6, "month recovery", needs_fixture([&] { return month_recovery(paper); }));
  run(7, "length/upvote recovery", needs_fixture([&] { return length_recovery(paper); }));
  run(8, "sentiment profile recovery", needs_fixture([&] { return sentiment_recovery(paper); }));
  run(9, "yoy arithmetic", yoy_arithmetic);
  run(10, "calendar correctness", calendar);
  print_outcome(11, "throughput", throughput_outcome);
  run(12, "determinism", [&] { return determinism(tmp / "determinism"); });

  std::printf("%s\n", failures ? "acceptance FAILED" : "acceptance passed");
  return failures ? 1 : 0;
}
