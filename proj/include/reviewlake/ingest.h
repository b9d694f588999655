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


// Streaming readers for source exports (RFC 4180 CSV and JSON lines) and the
// per-source adapters that project raw rows onto the unified draft schema.

#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "reviewlake/review.h"
#include "reviewlake/types.h"

namespace reviewlake::ingest {

inline constexpr std::size_t kMaxFieldBytes = std::size_t{1} << 20;

using Columns = std::vector<std::string>;

// One parsed source row. `columns` is shared by all rows with the same header.
struct RawRecord {
  Source source = Source::amazon;
  std::uint64_t row_number = 0;  // 1-based, header excluded
  std::shared_ptr<const Columns> columns;
  std::vector<std::string> values;

  // Value of `column`, or nullptr when the row has no such column.
  const std::string* field(std::string_view column) const;
};

struct ReaderStats {
  std::uint64_t records = 0;
  std::uint64_t rejects = 0;
  std::uint64_t skipped_blank = 0;

  std::uint64_t data_rows() const { return records + rejects + skipped_blank; }
};

using ReadResult = std::variant<RawRecord, RejectRecord>;

// RFC 4180 reader. Quoted fields may hold delimiters, doubled quotes and
// newlines. Rows with the wrong field count, over-long fields or invalid UTF-8
// come back as rejects; completely empty lines are skipped. An unterminated
// quote raises ParseError carrying the byte offset of the opening quote.
class CsvReader {
 public:
  CsvReader(std::istream& in, Source source, char delimiter = ',',
            std::size_t max_field_bytes = kMaxFieldBytes);

  std::optional<ReadResult> next();

  const Columns& header() const { return *columns_; }
  const ReaderStats& stats() const { return stats_; }

 private:
  int get();
  int peek();
  // Reads one physical record into fields_. False at end of input.
  bool read_row();

  std::istream& in_;
  Source source_;
  char delimiter_;
  std::size_t max_field_bytes_;
  std::vector<char> buffer_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
  std::uint64_t offset_ = 0;

  std::shared_ptr<const Columns> columns_;
  std::vector<std::string> fields_;
  bool row_oversize_ = false;
  bool row_blank_ = false;
  std::uint64_t row_number_ = 0;
  ReaderStats stats_;
};

// One flat JSON object per line. Numbers and booleans become their text,
// null becomes "". Blank lines are skipped; `row_number` is the line number.
class JsonlReader {
 public:
  JsonlReader(std::istream& in, Source source, std::size_t max_field_bytes = kMaxFieldBytes);

  std::optional<ReadResult> next();

  const ReaderStats& stats() const { return stats_; }

 private:
  std::istream& in_;
  Source source_;
  std::size_t max_field_bytes_;
  std::uint64_t line_number_ = 0;
  std::shared_ptr<const Columns> last_columns_;
  std::string line_;
  ReaderStats stats_;
};

struct ParsedFile {
  std::vector<RawRecord> records;
  std::vector<RejectRecord> rejects;
  ReaderStats stats;
};

ParsedFile parse_csv(std::istream& in, Source source, char delimiter = ',');
ParsedFile parse_jsonl(std::istream& in, Source source);

bool is_valid_utf8(std::string_view text);

// Field quoted per RFC 4180 when it holds the delimiter, a quote, CR or LF.
std::string csv_escape(std::string_view field, char delimiter = ',');

struct SourceMapping {
  struct ColumnMap {
    std::string name;
    std::string date;
    std::string sentiment;
    std::string upvotes;
    std::string text;

    friend bool operator==(const ColumnMap&, const ColumnMap&) = default;
  };

  Source source = Source::amazon;
  ColumnMap column_map;
  SentimentScheme sentiment_scheme = SentimentScheme::binary_label;
  std::vector<DateFormat> date_formats;

  friend bool operator==(const SourceMapping&, const SourceMapping&) = default;
};

// Parses a mapping document {source, column_map, sentiment_scheme,
// date_formats}. Throws MappingError on any schema violation.
SourceMapping parse_mapping(std::string_view json_text);
SourceMapping load_mapping(const std::filesystem::path& path);
std::string mapping_to_json(const SourceMapping& mapping);

// Bundled mapping for `source` (see data/mappings/).
const SourceMapping& default_mapping(Source source);

// Projects `record` onto the unified fields. Rejects missing_column when a
// mapped column is absent and null_field when name, date, sentiment or text
// is empty; an empty upvotes value is allowed.
std::variant<UnifiedDraft, RejectRecord> adapt(const RawRecord& record,
                                               const SourceMapping& mapping);

}  // namespace reviewlake::ingest
