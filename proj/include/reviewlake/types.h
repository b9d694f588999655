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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace reviewlake {

enum class Source : std::uint8_t { amazon, yelp, steam, imdb };

inline constexpr std::array<Source, 4> kAllSources = {Source::amazon, Source::yelp,
                                                      Source::steam, Source::imdb};

std::string_view to_string(Source source);
std::optional<Source> parse_source(std::string_view name);

// Closed set of reasons a row can be dropped. Every reject carries exactly one.
enum class RejectReason : std::uint8_t {
  ragged_row,
  bad_json,
  unsupported_shape,
  missing_column,
  null_field,
  oversize_field,
  bad_encoding,
  neutral_dropped,
  bad_label,
  bad_date,
  date_out_of_range,
  bad_upvotes,
  empty_after_clean,
};

inline constexpr std::size_t kRejectReasonCount = 13;

std::string_view to_string(RejectReason reason);
std::optional<RejectReason> parse_reject_reason(std::string_view name);

struct RejectRecord {
  Source source = Source::amazon;
  std::uint64_t row_number = 0;
  RejectReason reason = RejectReason::bad_json;
  std::string detail;

  friend bool operator==(const RejectRecord&, const RejectRecord&) = default;
};

// Base of every fatal error raised by the library. Rejects are not errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user configuration (flags, config file, partition counts). CLI exit 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Unreadable or unwritable file. CLI exit 1.
class IoError : public Error {
 public:
  using Error::Error;
};

// A mapping file or stoplist that does not satisfy its schema. CLI exit 1.
class MappingError : public Error {
 public:
  using Error::Error;
};

// Unrecoverable input syntax, e.g. an unterminated quote at end of file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::uint64_t byte_offset)
      : Error(what), byte_offset_(byte_offset) {}
  std::uint64_t byte_offset() const { return byte_offset_; }

 private:
  std::uint64_t byte_offset_;
};

// Lake contents disagree with the manifest or with record invariants.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

// Datasets of different record shapes were combined.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A query hit a record it cannot aggregate (non-numeric metric input).
class QueryError : public Error {
 public:
  using Error::Error;
};

}  // namespace reviewlake
