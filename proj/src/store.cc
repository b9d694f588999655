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


#include "reviewlake/store.h"

#include <unistd.h>

#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "reviewlake/calendar.h"

namespace reviewlake::store {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

void append_json_string(std::string& out, std::string_view s) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\b':
        out += "\\b";
        break;
      case '\f':
        out += "\\f";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

fs::path sibling(const fs::path& dir, const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  const fs::path parent = dir.parent_path().empty() ? fs::path(".") : dir.parent_path();
  return parent / ("." + dir.filename().string() + "." + tag + "-" + std::to_string(::getpid()) +
                   "-" + std::to_string(counter.fetch_add(1)));
}

[[noreturn]] void corrupt(const fs::path& file, std::uint64_t line, const std::string& what) {
  throw CorruptionError(file.string() + ":" + std::to_string(line) + ": " + what);
}

UnifiedReview parse_review_line(const std::string& line, const fs::path& file, std::uint64_t row,
                                Source expected, const clean::Stoplist* stops) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) corrupt(file, row, "not a JSON object");
  static constexpr std::array<const char*, 6> kFields = {"name",    "creation_date", "sentiment",
                                                         "upvotes", "review_text",   "source"};
  if (j.size() != kFields.size()) corrupt(file, row, "unexpected field set");
  for (const char* f : kFields) {
    if (!j.contains(f)) corrupt(file, row, std::string("missing field '") + f + "'");
  }
  UnifiedReview r;
  const auto& name = j["name"];
  if (!name.is_string() || name.get_ref<const std::string&>().empty()) {
    corrupt(file, row, "name must be a non-empty string");
  }
  r.name = name.get<std::string>();

  const auto& date = j["creation_date"];
  if (!date.is_string()) corrupt(file, row, "creation_date must be a string");
  auto d = parse_iso(date.get_ref<const std::string&>());
  if (!d || *d < clean::kEarliestDate || clean::kLatestDate < *d) {
    corrupt(file, row, "invalid creation_date '" + date.get<std::string>() + "'");
  }
  r.creation_date = *d;

  const auto& sentiment = j["sentiment"];
  if (!sentiment.is_number_integer() || (sentiment.get<std::int64_t>() != 0 &&
                                         sentiment.get<std::int64_t>() != 1)) {
    corrupt(file, row, "sentiment must be 0 or 1, got " + sentiment.dump());
  }
  r.sentiment = static_cast<std::uint8_t>(sentiment.get<std::int64_t>());

  const auto& upvotes = j["upvotes"];
  if (!upvotes.is_number_integer() || upvotes.get<std::int64_t>() < 0) {
    corrupt(file, row, "upvotes must be a non-negative integer, got " + upvotes.dump());
  }
  r.upvotes = upvotes.get<std::int64_t>();

  const auto& text = j["review_text"];
  if (!text.is_string()) corrupt(file, row, "review_text must be a string");
  r.review_text = text.get<std::string>();
  if (r.review_text.empty() || !clean::is_clean_text(r.review_text)) {
    corrupt(file, row, "review_text is not cleaned text");
  }
  if (stops && clean::remove_stopwords(r.review_text, *stops) != r.review_text) {
    corrupt(file, row, "review_text contains stopwords");
  }

  const auto& source = j["source"];
  auto src = source.is_string() ? parse_source(source.get_ref<const std::string&>()) : std::nullopt;
  if (!src || *src != expected) corrupt(file, row, "source does not match file");
  r.source = *src;
  return r;
}

}  // namespace

std::uint64_t SourceCounts::rejected() const {
  std::uint64_t n = 0;
  for (const auto& [reason, count] : rejected_by_reason) n += count;
  return n;
}

std::uint64_t LakeManifest::accepted_total() const {
  std::uint64_t n = 0;
  for (const auto& [s, c] : per_source) n += c.accepted;
  return n;
}

std::uint64_t LakeManifest::rejected_total() const {
  std::uint64_t n = 0;
  for (const auto& [s, c] : per_source) n += c.rejected();
  return n;
}

std::string review_to_json(const UnifiedReview& r) {
  std::string out;
  out.reserve(r.name.size() + r.review_text.size() + 110);
  out += "{\"name\":";
  append_json_string(out, r.name);
  out += ",\"creation_date\":\"";
  out += to_iso(r.creation_date);
  out += "\",\"sentiment\":";
  out += std::to_string(r.sentiment);
  out += ",\"upvotes\":";
  out += std::to_string(r.upvotes);
  out += ",\"review_text\":";
  append_json_string(out, r.review_text);
  out += ",\"source\":\"";
  out += to_string(r.source);
  out += "\"}";
  return out;
}

std::string reject_to_json(const RejectRecord& r) {
  std::string out = "{\"source\":\"";
  out += to_string(r.source);
  out += "\",\"row_number\":";
  out += std::to_string(r.row_number);
  out += ",\"reason\":\"";
  out += to_string(r.reason);
  out += "\",\"detail\":";
  append_json_string(out, ingest::is_valid_utf8(r.detail) ? r.detail : std::string("<binary>"));
  out += "}";
  return out;
}

std::string format_timestamp(std::int64_t epoch_seconds) {
  std::int64_t days = epoch_seconds / 86400;
  std::int64_t rem = epoch_seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  const CivilDate d = civil_from_days(days);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", to_iso(d).c_str(),
                static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                static_cast<int>(rem % 60));
  return buf;
}

std::string resolve_created_at(const std::string& configured) {
  if (!configured.empty()) return configured;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env && *env) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0') return format_timestamp(v);
  }
  const auto now = std::chrono::system_clock::now();
  return format_timestamp(
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count());
}

std::string manifest_to_json(const LakeManifest& m) {
  ordered_json doc;
  doc["created_at"] = m.created_at;
  doc["stoplist_checksum"] = m.stoplist_checksum;
  ordered_json per = ordered_json::object();
  for (const auto& [source, c] : m.per_source) {
    ordered_json reasons = ordered_json::object();
    for (const auto& [reason, count] : c.rejected_by_reason) reasons[to_string(reason)] = count;
    per[std::string(to_string(source))] = {{"input_rows", c.input_rows},
                                           {"skipped_blank", c.skipped_blank},
                                           {"accepted", c.accepted},
                                           {"rejected", c.rejected()},
                                           {"rejected_by_reason", std::move(reasons)}};
  }
  doc["per_source"] = std::move(per);
  doc["record_files"] = m.record_files;
  doc["rejects_file"] = kRejectsFile;
  return doc.dump(2) + "\n";
}

LakeManifest manifest_from_json(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw CorruptionError("manifest is not a JSON object");
  LakeManifest m;
  try {
    m.created_at = doc.at("created_at").get<std::string>();
    m.stoplist_checksum = doc.at("stoplist_checksum").get<std::string>();
    for (const auto& [name, entry] : doc.at("per_source").items()) {
      auto source = parse_source(name);
      if (!source) throw CorruptionError("manifest: unknown source '" + name + "'");
      SourceCounts c;
      c.input_rows = entry.at("input_rows").get<std::uint64_t>();
      c.skipped_blank = entry.at("skipped_blank").get<std::uint64_t>();
      c.accepted = entry.at("accepted").get<std::uint64_t>();
      for (const auto& [rname, count] : entry.at("rejected_by_reason").items()) {
        auto reason = parse_reject_reason(rname);
        if (!reason) throw CorruptionError("manifest: unknown reject reason '" + rname + "'");
        c.rejected_by_reason[*reason] = count.get<std::uint64_t>();
      }
      if (entry.at("rejected").get<std::uint64_t>() != c.rejected()) {
        throw CorruptionError("manifest: rejected total for " + name + " disagrees with reasons");
      }
      m.per_source[*source] = std::move(c);
    }
    m.record_files = doc.at("record_files").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw CorruptionError(std::string("manifest: ") + e.what());
  }
  return m;
}

LakeManifest write_lake(const engine::PartitionedDataset<UnifiedReview>& reviews,
                        std::vector<RejectRecord> rejects, const fs::path& dir,
                        const LakeWriteOptions& options) {
  LakeManifest manifest;
  manifest.created_at = resolve_created_at(options.created_at);
  manifest.stoplist_checksum = options.stoplist_checksum;

  std::map<Source, std::string> bodies;
  const std::vector<UnifiedReview> all = reviews.to_vector();
  for (const auto& r : all) {
    std::string& body = bodies[r.source];
    body += review_to_json(r);
    body.push_back('\n');
    ++manifest.per_source[r.source].accepted;
  }

  std::stable_sort(rejects.begin(), rejects.end(), [](const auto& a, const auto& b) {
    return std::pair(a.source, a.row_number) < std::pair(b.source, b.row_number);
  });
  std::string reject_body;
  for (const auto& r : rejects) {
    reject_body += reject_to_json(r);
    reject_body.push_back('\n');
    ++manifest.per_source[r.source].rejected_by_reason[r.reason];
  }

  for (const auto& [source, stats] : options.input) {
    auto& c = manifest.per_source[source];
    c.input_rows = stats.data_rows();
    c.skipped_blank = stats.skipped_blank;
  }
  for (auto& [source, c] : manifest.per_source) {
    if (!options.input.count(source)) c.input_rows = c.accepted + c.rejected();
    if (!c.balanced()) {
      throw std::logic_error("lake accounting for " + std::string(to_string(source)) +
                             " does not balance: " + std::to_string(c.accepted) + " accepted + " +
                             std::to_string(c.rejected()) + " rejected + " +
                             std::to_string(c.skipped_blank) + " blank != " +
                             std::to_string(c.input_rows) + " input rows");
    }
  }
  for (const auto& [source, body] : bodies) {
    manifest.record_files.push_back(std::string(to_string(source)) + ".jsonl");
  }

  const fs::path staging = sibling(dir, "staging");
  try {
    if (!dir.parent_path().empty()) fs::create_directories(dir.parent_path());
    fs::create_directories(staging);
    for (const auto& [source, body] : bodies) {
      write_file(staging / (std::string(to_string(source)) + ".jsonl"), body);
    }
    write_file(staging / kRejectsFile, reject_body);
    write_file(staging / kManifestFile, manifest_to_json(manifest));
    if (options.before_commit) options.before_commit(staging);

    fs::path retired;
    if (fs::exists(dir)) {
      retired = sibling(dir, "retired");
      fs::rename(dir, retired);
    }
    fs::rename(staging, dir);
    if (!retired.empty()) fs::remove_all(retired);
  } catch (const fs::filesystem_error& e) {
    std::error_code ec;
    fs::remove_all(staging, ec);
    throw IoError(std::string("writing lake ") + dir.string() + ": " + e.what());
  } catch (...) {
    std::error_code ec;
    fs::remove_all(staging, ec);
    throw;
  }
  return manifest;
}

LakeManifest read_manifest(const fs::path& dir) {
  const fs::path path = dir / kManifestFile;
  if (!fs::exists(path)) throw IoError("no lake at " + dir.string() + " (manifest.json missing)");
  try {
    return manifest_from_json(read_file(path));
  } catch (const CorruptionError& e) {
    throw CorruptionError(path.string() + ": " + e.what());
  }
}

engine::PartitionedDataset<UnifiedReview> read_lake(const fs::path& dir,
                                                    std::size_t partition_count,
                                                    const clean::Stoplist* stops) {
  const LakeManifest manifest = read_manifest(dir);
  std::vector<UnifiedReview> records;
  records.reserve(manifest.accepted_total());

  std::map<Source, bool> listed;
  for (const auto& rel : manifest.record_files) {
    const fs::path file = dir / rel;
    const fs::path stem = fs::path(rel).stem();
    auto source = parse_source(stem.string());
    if (!source || fs::path(rel).extension() != ".jsonl") {
      throw CorruptionError(dir.string() + ": unexpected record file '" + rel + "'");
    }
    listed[*source] = true;
    std::ifstream in(file, std::ios::binary);
    if (!in) throw CorruptionError("record file listed in manifest is missing: " + file.string());
    std::string line;
    std::uint64_t row = 0;
    while (std::getline(in, line)) {
      ++row;
      records.push_back(parse_review_line(line, file, row, *source, stops));
    }
    const auto it = manifest.per_source.find(*source);
    const std::uint64_t expected = it == manifest.per_source.end() ? 0 : it->second.accepted;
    if (row != expected) {
      throw CorruptionError(file.string() + ": manifest expects " + std::to_string(expected) +
                            " records, file has " + std::to_string(row));
    }
  }
  for (const auto& [source, c] : manifest.per_source) {
    if (c.accepted > 0 && !listed.count(source)) {
      throw CorruptionError(dir.string() + ": manifest counts " + std::to_string(c.accepted) +
                            " " + std::string(to_string(source)) +
                            " records but lists no record file");
    }
    if (!c.balanced()) {
      throw CorruptionError(dir.string() + ": manifest accounting for " +
                            std::string(to_string(source)) + " does not balance");
    }
  }
  return engine::PartitionedDataset<UnifiedReview>::from_records(std::move(records),
                                                                 partition_count);
}

std::vector<RejectRecord> read_rejects(const fs::path& dir) {
  const LakeManifest manifest = read_manifest(dir);
  const fs::path file = dir / kRejectsFile;
  std::ifstream in(file, std::ios::binary);
  if (!in) throw CorruptionError("rejects file missing: " + file.string());
  std::vector<RejectRecord> out;
  std::string line;
  std::uint64_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) corrupt(file, row, "not a JSON object");
    try {
      auto source = parse_source(j.at("source").get<std::string>());
      auto reason = parse_reject_reason(j.at("reason").get<std::string>());
      if (!source || !reason) corrupt(file, row, "unknown source or reason");
      out.push_back({*source, j.at("row_number").get<std::uint64_t>(), *reason,
                     j.at("detail").get<std::string>()});
    } catch (const json::exception& e) {
      corrupt(file, row, e.what());
    }
  }
  if (out.size() != manifest.rejected_total()) {
    throw CorruptionError(file.string() + ": manifest expects " +
                          std::to_string(manifest.rejected_total()) + " rejects, file has " +
                          std::to_string(out.size()));
  }
  return out;
}

engine::PartitionedDataset<UnifiedReview> merge_lakes(const std::vector<fs::path>& dirs,
                                                      std::size_t partition_count,
                                                      const clean::Stoplist* stops) {
  std::vector<engine::PartitionedDataset<UnifiedReview>> lakes;
  lakes.reserve(dirs.size());
  for (const auto& d : dirs) lakes.push_back(read_lake(d, partition_count, stops));
  return engine::union_all(lakes, partition_count);
}

}  // namespace reviewlake::store
