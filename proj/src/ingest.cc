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


#include "reviewlake/ingest.h"

#include <array>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "reviewlake_embedded_data.h"

namespace reviewlake::ingest {
namespace {

using json = nlohmann::json;

constexpr int kEof = -1;

RejectRecord make_reject(Source source, std::uint64_t row, RejectReason reason,
                         std::string detail = {}) {
  return RejectRecord{source, row, reason, std::move(detail)};
}

// Collects one flat JSON object. Any nesting or a non-object top level is an
// unsupported shape.
class FlatObjectHandler final : public nlohmann::json_sax<json> {
 public:
  explicit FlatObjectHandler(std::size_t max_field_bytes) : max_field_bytes_(max_field_bytes) {}

  bool null() override { return value(""); }
  bool boolean(bool v) override { return value(v ? "true" : "false"); }
  bool number_integer(number_integer_t v) override { return value(std::to_string(v)); }
  bool number_unsigned(number_unsigned_t v) override { return value(std::to_string(v)); }
  bool number_float(number_float_t, const string_t& raw) override { return value(raw); }
  bool string(string_t& v) override { return value(std::move(v)); }
  bool binary(binary_t&) override { return shape_error(); }

  bool start_object(std::size_t) override {
    if (depth_ != 0) return shape_error();
    depth_ = 1;
    seen_object_ = true;
    return true;
  }
  bool end_object() override {
    depth_ = 0;
    return true;
  }
  bool start_array(std::size_t) override { return shape_error(); }
  bool end_array() override { return shape_error(); }
  bool key(string_t& k) override {
    pending_key_ = std::move(k);
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override {
    syntax_error_ = true;
    return false;
  }

  bool unsupported_shape() const { return shape_; }
  bool syntax_error() const { return syntax_error_; }
  bool oversize() const { return oversize_; }
  bool seen_object() const { return seen_object_; }

  std::vector<std::string> keys;
  std::vector<std::string> values;

 private:
  bool shape_error() {
    shape_ = true;
    return false;
  }

  bool value(std::string v) {
    if (depth_ != 1) return shape_error();
    if (v.size() > max_field_bytes_) oversize_ = true;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i] == pending_key_) {
        values[i] = std::move(v);
        return true;
      }
    }
    keys.push_back(std::move(pending_key_));
    values.push_back(std::move(v));
    return true;
  }

  std::size_t max_field_bytes_;
  int depth_ = 0;
  bool seen_object_ = false;
  bool shape_ = false;
  bool syntax_error_ = false;
  bool oversize_ = false;
  std::string pending_key_;
};

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

}  // namespace

const std::string* RawRecord::field(std::string_view column) const {
  if (!columns) return nullptr;
  const Columns& cols = *columns;
  for (std::size_t i = 0; i < cols.size() && i < values.size(); ++i) {
    if (cols[i] == column) return &values[i];
  }
  return nullptr;
}

bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t len;
    std::uint32_t cp;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates and values past U+10FFFF.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

std::string csv_escape(std::string_view field, char delimiter) {
  if (field.find_first_of(std::string{'"', '\r', '\n', delimiter}) == std::string_view::npos) {
    return std::string(field);
  }
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// ---------------------------------------------------------------------------
// CsvReader

CsvReader::CsvReader(std::istream& in, Source source, char delimiter, std::size_t max_field_bytes)
    : in_(in),
      source_(source),
      delimiter_(delimiter),
      max_field_bytes_(max_field_bytes),
      buffer_(std::size_t{1} << 16) {
  if (delimiter == '"' || delimiter == '\n' || delimiter == '\r') {
    throw ConfigError("invalid CSV delimiter");
  }
  // UTF-8 byte order mark.
  if (peek() == 0xEF) {
    if (pos_ + 3 <= end_ && static_cast<unsigned char>(buffer_[pos_ + 1]) == 0xBB &&
        static_cast<unsigned char>(buffer_[pos_ + 2]) == 0xBF) {
      get();
      get();
      get();
    }
  }
  auto columns = std::make_shared<Columns>();
  if (read_row()) {
    if (row_oversize_) throw ParseError("CSV header field exceeds size cap", 0);
    for (auto& f : fields_) {
      if (!is_valid_utf8(f)) throw ParseError("CSV header is not valid UTF-8", 0);
      columns->push_back(std::move(f));
    }
  }
  columns_ = std::move(columns);
}

int CsvReader::peek() {
  if (pos_ == end_) {
    in_.read(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    end_ = static_cast<std::size_t>(in_.gcount());
    pos_ = 0;
    if (end_ == 0) return kEof;
  }
  return static_cast<unsigned char>(buffer_[pos_]);
}

int CsvReader::get() {
  const int c = peek();
  if (c != kEof) {
    ++pos_;
    ++offset_;
  }
  return c;
}

bool CsvReader::read_row() {
  fields_.clear();
  row_oversize_ = false;
  row_blank_ = false;
  if (peek() == kEof) return false;

  std::string field;
  bool field_started = false;
  bool in_quotes = false;
  bool any_quote = false;
  std::uint64_t quote_offset = 0;

  auto append = [&](char c) {
    if (field.size() >= max_field_bytes_) {
      row_oversize_ = true;
      return;
    }
    field.push_back(c);
  };
  auto finish_field = [&] {
    fields_.push_back(std::move(field));
    field.clear();
    field_started = false;
  };

  for (;;) {
    const std::uint64_t here = offset_;
    const int c = get();
    if (c == kEof) {
      if (in_quotes) {
        throw ParseError("unterminated quoted field starting at byte " + std::to_string(quote_offset),
                         quote_offset);
      }
      finish_field();
      break;
    }
    const char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (peek() == '"') {
          get();
          append('"');
        } else {
          in_quotes = false;
        }
      } else {
        append(ch);
      }
      continue;
    }
    if (ch == '"' && !field_started) {
      in_quotes = true;
      any_quote = true;
      field_started = true;
      quote_offset = here;
    } else if (ch == delimiter_) {
      finish_field();
    } else if (ch == '\n') {
      finish_field();
      break;
    } else if (ch == '\r' && peek() == '\n') {
      get();
      finish_field();
      break;
    } else {
      field_started = true;
      append(ch);
    }
  }
  row_blank_ = !any_quote && fields_.size() == 1 && fields_[0].empty();
  return true;
}

std::optional<ReadResult> CsvReader::next() {
  for (;;) {
    if (!read_row()) return std::nullopt;
    ++row_number_;
    if (row_blank_) {
      ++stats_.skipped_blank;
      continue;
    }
    if (fields_.size() != columns_->size()) {
      ++stats_.rejects;
      return ReadResult{make_reject(source_, row_number_, RejectReason::ragged_row,
                                    "expected " + std::to_string(columns_->size()) +
                                        " fields, got " + std::to_string(fields_.size()))};
    }
    if (row_oversize_) {
      ++stats_.rejects;
      return ReadResult{make_reject(source_, row_number_, RejectReason::oversize_field)};
    }
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (!is_valid_utf8(fields_[i])) {
        ++stats_.rejects;
        return ReadResult{
            make_reject(source_, row_number_, RejectReason::bad_encoding, (*columns_)[i])};
      }
    }
    ++stats_.records;
    return ReadResult{RawRecord{source_, row_number_, columns_, std::move(fields_)}};
  }
}

// ---------------------------------------------------------------------------
// JsonlReader

JsonlReader::JsonlReader(std::istream& in, Source source, std::size_t max_field_bytes)
    : in_(in), source_(source), max_field_bytes_(max_field_bytes) {}

std::optional<ReadResult> JsonlReader::next() {
  while (std::getline(in_, line_)) {
    ++line_number_;
    if (!line_.empty() && line_.back() == '\r') line_.pop_back();
    if (is_blank(line_)) {
      ++stats_.skipped_blank;
      continue;
    }
    if (!is_valid_utf8(line_)) {
      ++stats_.rejects;
      return ReadResult{make_reject(source_, line_number_, RejectReason::bad_encoding)};
    }
    FlatObjectHandler handler(max_field_bytes_);
    const bool ok = json::sax_parse(line_, &handler);
    if (!ok || !handler.seen_object()) {
      ++stats_.rejects;
      const RejectReason reason = handler.unsupported_shape() || (ok && !handler.seen_object())
                                      ? RejectReason::unsupported_shape
                                      : RejectReason::bad_json;
      return ReadResult{make_reject(source_, line_number_, reason)};
    }
    if (handler.oversize()) {
      ++stats_.rejects;
      return ReadResult{make_reject(source_, line_number_, RejectReason::oversize_field)};
    }
    if (!last_columns_ || *last_columns_ != handler.keys) {
      last_columns_ = std::make_shared<const Columns>(std::move(handler.keys));
    }
    ++stats_.records;
    return ReadResult{RawRecord{source_, line_number_, last_columns_, std::move(handler.values)}};
  }
  return std::nullopt;
}

namespace {

template <class Reader>
ParsedFile drain(Reader& reader) {
  ParsedFile out;
  while (auto r = reader.next()) {
    if (auto* rec = std::get_if<RawRecord>(&*r)) {
      out.records.push_back(std::move(*rec));
    } else {
      out.rejects.push_back(std::get<RejectRecord>(std::move(*r)));
    }
  }
  out.stats = reader.stats();
  return out;
}

}  // namespace

ParsedFile parse_csv(std::istream& in, Source source, char delimiter) {
  CsvReader reader(in, source, delimiter);
  return drain(reader);
}

ParsedFile parse_jsonl(std::istream& in, Source source) {
  JsonlReader reader(in, source);
  return drain(reader);
}

// ---------------------------------------------------------------------------
// Mappings

SourceMapping parse_mapping(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw MappingError(std::string("mapping is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw MappingError("mapping must be a JSON object");

  auto require_string = [](const json& obj, const char* key) -> std::string {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string() || it->get<std::string>().empty()) {
      throw MappingError(std::string("mapping: '") + key + "' must be a non-empty string");
    }
    return it->get<std::string>();
  };

  SourceMapping m;
  const std::string source = require_string(doc, "source");
  auto src = parse_source(source);
  if (!src) throw MappingError("mapping: unknown source '" + source + "'");
  m.source = *src;

  auto cm = doc.find("column_map");
  if (cm == doc.end() || !cm->is_object()) throw MappingError("mapping: 'column_map' missing");
  m.column_map.name = require_string(*cm, "name");
  m.column_map.date = require_string(*cm, "date");
  m.column_map.sentiment = require_string(*cm, "sentiment");
  m.column_map.upvotes = require_string(*cm, "upvotes");
  m.column_map.text = require_string(*cm, "text");

  const std::string scheme = require_string(doc, "sentiment_scheme");
  auto sch = parse_sentiment_scheme(scheme);
  if (!sch) throw MappingError("mapping: unknown sentiment_scheme '" + scheme + "'");
  m.sentiment_scheme = *sch;

  auto df = doc.find("date_formats");
  if (df == doc.end() || !df->is_array() || df->empty()) {
    throw MappingError("mapping: 'date_formats' must be a non-empty array");
  }
  for (const auto& f : *df) {
    if (!f.is_string()) throw MappingError("mapping: date format ids must be strings");
    auto fmt = parse_date_format(f.get<std::string>());
    if (!fmt) throw MappingError("mapping: unknown date format '" + f.get<std::string>() + "'");
    m.date_formats.push_back(*fmt);
  }
  return m;
}

SourceMapping load_mapping(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read mapping file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_mapping(ss.str());
  } catch (const MappingError& e) {
    throw MappingError(path.string() + ": " + e.what());
  }
}

std::string mapping_to_json(const SourceMapping& m) {
  nlohmann::ordered_json doc;
  doc["source"] = to_string(m.source);
  doc["column_map"] = {{"name", m.column_map.name},
                       {"date", m.column_map.date},
                       {"sentiment", m.column_map.sentiment},
                       {"upvotes", m.column_map.upvotes},
                       {"text", m.column_map.text}};
  doc["sentiment_scheme"] = to_string(m.sentiment_scheme);
  auto formats = nlohmann::ordered_json::array();
  for (auto f : m.date_formats) formats.push_back(to_string(f));
  doc["date_formats"] = std::move(formats);
  return doc.dump(2) + "\n";
}

const SourceMapping& default_mapping(Source source) {
  static const std::array<SourceMapping, 4> kDefaults = {
      parse_mapping(embedded::kAmazonMapping), parse_mapping(embedded::kYelpMapping),
      parse_mapping(embedded::kSteamMapping), parse_mapping(embedded::kImdbMapping)};
  return kDefaults[static_cast<std::size_t>(source)];
}

// ---------------------------------------------------------------------------
// Adapter

std::variant<UnifiedDraft, RejectRecord> adapt(const RawRecord& record,
                                               const SourceMapping& mapping) {
  if (record.source != mapping.source) {
    throw std::invalid_argument("adapt: mapping for " + std::string(to_string(mapping.source)) +
                                " applied to a " + std::string(to_string(record.source)) + " row");
  }
  const auto& cm = mapping.column_map;
  const std::array<const std::string*, 5> columns = {&cm.name, &cm.date, &cm.sentiment,
                                                     &cm.upvotes, &cm.text};
  std::array<const std::string*, 5> values{};
  for (std::size_t i = 0; i < columns.size(); ++i) {
    values[i] = record.field(*columns[i]);
    if (values[i] == nullptr) {
      return make_reject(record.source, record.row_number, RejectReason::missing_column,
                         *columns[i]);
    }
  }
  // Upvotes (index 3) may be empty.
  for (std::size_t i : {0, 1, 2, 4}) {
    if (values[i]->empty()) {
      return make_reject(record.source, record.row_number, RejectReason::null_field, *columns[i]);
    }
  }
  return UnifiedDraft{*values[0], *values[1], *values[2], *values[3], *values[4],
                      record.source, record.row_number};
}

}  // namespace reviewlake::ingest
