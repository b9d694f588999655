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

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace reviewlake {

// One cell of a query result or one component of a group key. Ordering is the
// variant ordering: integers < doubles < strings, then by value.
using Value = std::variant<std::int64_t, double, std::string>;
using GroupKey = std::vector<Value>;
using Row = std::vector<Value>;

inline bool is_numeric(const Value& v) { return !std::holds_alternative<std::string>(v); }
double as_double(const Value& v);

// Integers print bare, doubles with exactly six decimals, strings verbatim.
std::string format_value(const Value& v);

struct AggTable {
  std::string name;
  std::vector<std::string> columns;
  // The first `key_columns` columns form the group key; rows are sorted by it.
  std::size_t key_columns = 0;
  std::vector<Row> rows;

  bool empty() const { return rows.empty(); }
  // Index of `column`, or columns.size() when absent.
  std::size_t column_index(std::string_view column) const;

  friend bool operator==(const AggTable&, const AggTable&) = default;
};

}  // namespace reviewlake
