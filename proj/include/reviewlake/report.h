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


// Serialises query tables to CSV/JSON and renders them as static SVG bar
// charts. Output bytes depend only on the inputs.

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reviewlake/table.h"

namespace reviewlake::report {

enum class TableFormat { csv, json };

std::optional<TableFormat> parse_table_format(std::string_view name);
std::string_view extension(TableFormat format);

// Header row plus one line per row, RFC 4180 quoting, '\n' line ends.
std::string table_to_csv(const AggTable& table);
// Array of objects with keys in column order.
std::string table_to_json(const AggTable& table);

// Cells that look like integers or decimals are read back as numbers.
AggTable table_from_csv(std::string_view text, std::string name, std::size_t key_columns);
AggTable table_from_json(std::string_view text, std::string name, std::size_t key_columns);

void emit_table(const AggTable& table, TableFormat format, const std::filesystem::path& path);

inline constexpr std::array<std::string_view, 8> kPalette = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7"};

struct ChartSpec {
  std::string table;                  // query id
  std::string x;                      // one bar group per distinct value
  std::optional<std::string> series;  // one bar per distinct value within a group
  std::string y;                      // numeric column
  std::string title;
  int width = 800;
  int height = 450;
  // Only rows whose column equals the value are drawn.
  std::vector<std::pair<std::string, Value>> where;
};

// Grouped bar chart. Exactly one <rect> per (x, series) slot; the y axis runs
// from min(0, smallest value) to max(largest value, 1) with five gridlines.
std::string render_bar_chart(const ChartSpec& spec, const AggTable& table);
void emit_bar_chart(const ChartSpec& spec, const AggTable& table, const std::filesystem::path& path);

// Chart used by the report command for each query id.
std::optional<ChartSpec> default_chart(std::string_view query_id);

}  // namespace reviewlake::report
