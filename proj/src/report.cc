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


#include "reviewlake/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "reviewlake/ingest.h"
#include "reviewlake/types.h"

namespace reviewlake::report {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string json_string(std::string_view s) { return json(std::string(s)).dump(); }

std::string json_cell(const Value& v) {
  if (std::holds_alternative<std::string>(v)) return json_string(std::get<std::string>(v));
  return format_value(v);
}

Value infer_cell(const std::string& s) {
  std::size_t i = s.size() > 0 && s[0] == '-' ? 1 : 0;
  const std::size_t digits_start = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == digits_start) return s;
  if (i == s.size()) {
    try {
      return static_cast<std::int64_t>(std::stoll(s));
    } catch (const std::out_of_range&) {
      return s;
    }
  }
  if (s[i] != '.') return s;
  const std::size_t frac_start = ++i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == frac_start || i != s.size()) return s;
  return std::stod(s);
}

void write_text(const fs::path& path, const std::string& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  if (std::fabs(v - std::round(v)) < 1e-9) {
    std::snprintf(buf, sizeof buf, "%.0f", std::round(v) == 0.0 ? 0.0 : std::round(v));
  } else {
    std::snprintf(buf, sizeof buf, "%.2f", v);
  }
  return buf;
}

std::string label_of(const Value& v) {
  if (std::holds_alternative<double>(v)) return tick_label(std::get<double>(v));
  return format_value(v);
}

std::size_t require_column(const AggTable& table, const std::string& column) {
  const std::size_t i = table.column_index(column);
  if (i == table.columns.size()) {
    throw ConfigError("chart: table '" + table.name + "' has no column '" + column + "'");
  }
  return i;
}

std::string svg_open(const ChartSpec& spec) {
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
    << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<title>" << xml_escape(spec.title) << "</title>\n"
    << "<text class=\"title\" x=\"" << px(spec.width / 2.0)
    << "\" y=\"22\" text-anchor=\"middle\" font-size=\"16\">" << xml_escape(spec.title)
    << "</text>\n";
  return o.str();
}

}  // namespace

std::optional<TableFormat> parse_table_format(std::string_view name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "json") return TableFormat::json;
  return std::nullopt;
}

std::string_view extension(TableFormat format) { return format == TableFormat::csv ? "csv" : "json"; }

std::string table_to_csv(const AggTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out.push_back(',');
    out += ingest::csv_escape(table.columns[c]);
  }
  out.push_back('\n');
  for (const Row& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out.push_back(',');
      out += ingest::csv_escape(format_value(row[c]));
    }
    out.push_back('\n');
  }
  return out;
}

std::string table_to_json(const AggTable& table) {
  if (table.rows.empty()) return "[]\n";
  std::string out = "[\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += "  {";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out += ", ";
      out += json_string(table.columns[c]);
      out += ": ";
      out += json_cell(table.rows[r][c]);
    }
    out += r + 1 < table.rows.size() ? "},\n" : "}\n";
  }
  out += "]\n";
  return out;
}

AggTable table_from_csv(std::string_view text, std::string name, std::size_t key_columns) {
  std::istringstream in{std::string(text)};
  ingest::CsvReader reader(in, Source::amazon);
  AggTable table;
  table.name = std::move(name);
  table.columns = reader.header();
  table.key_columns = key_columns;
  while (auto r = reader.next()) {
    auto* rec = std::get_if<ingest::RawRecord>(&*r);
    if (!rec) throw ParseError("table CSV has a malformed row", 0);
    Row row;
    for (const auto& v : rec->values) row.push_back(infer_cell(v));
    table.rows.push_back(std::move(row));
  }
  return table;
}

AggTable table_from_json(std::string_view text, std::string name, std::size_t key_columns) {
  // Preserve key order so columns come back in emitted order.
  const auto doc = nlohmann::ordered_json::parse(text);
  AggTable table;
  table.name = std::move(name);
  table.key_columns = key_columns;
  for (const auto& obj : doc) {
    if (table.columns.empty()) {
      for (const auto& [k, v] : obj.items()) table.columns.push_back(k);
    }
    Row row;
    for (const auto& [k, v] : obj.items()) {
      if (v.is_number_integer()) {
        row.emplace_back(v.get<std::int64_t>());
      } else if (v.is_number()) {
        row.emplace_back(v.get<double>());
      } else {
        row.emplace_back(v.get<std::string>());
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void emit_table(const AggTable& table, TableFormat format, const fs::path& path) {
  write_text(path, format == TableFormat::csv ? table_to_csv(table) : table_to_json(table));
}

std::string render_bar_chart(const ChartSpec& spec, const AggTable& table) {
  if (spec.width <= 0 || spec.height <= 0) throw ConfigError("chart: width and height must be > 0");
  const std::size_t xi = require_column(table, spec.x);
  const std::size_t yi = require_column(table, spec.y);
  const std::optional<std::size_t> si =
      spec.series ? std::optional(require_column(table, *spec.series)) : std::nullopt;
  std::vector<std::pair<std::size_t, Value>> filters;
  for (const auto& [col, v] : spec.where) filters.emplace_back(require_column(table, col), v);

  std::vector<Value> xs;
  std::vector<Value> ss;
  std::map<std::pair<std::size_t, std::size_t>, double> values;
  for (const Row& row : table.rows) {
    bool keep = true;
    for (const auto& [c, v] : filters) keep = keep && row[c] == v;
    if (!keep) continue;
    if (!is_numeric(row[yi])) {
      throw SchemaError("chart: column '" + spec.y + "' of '" + table.name + "' is not numeric");
    }
    auto index_of = [](std::vector<Value>& seen, const Value& v) {
      auto it = std::find(seen.begin(), seen.end(), v);
      if (it != seen.end()) return static_cast<std::size_t>(it - seen.begin());
      seen.push_back(v);
      return seen.size() - 1;
    };
    const std::size_t gx = index_of(xs, row[xi]);
    const std::size_t gs = si ? index_of(ss, row[*si]) : 0;
    if (!values.emplace(std::pair(gx, gs), as_double(row[yi])).second) {
      throw ConfigError("chart: several rows of '" + table.name + "' share one bar (x=" +
                        label_of(row[xi]) + ")");
    }
  }

  std::string out = svg_open(spec);
  if (values.empty()) {
    out += "<text class=\"no-data\" x=\"" + px(spec.width / 2.0) + "\" y=\"" +
           px(spec.height / 2.0) + "\" text-anchor=\"middle\">no data</text>\n</svg>\n";
    return out;
  }
  if (!si) ss.push_back(std::string(spec.y));

  double vmax = 1.0;
  double vmin = 0.0;
  for (const auto& [slot, v] : values) {
    vmax = std::max(vmax, v);
    vmin = std::min(vmin, v);
  }
  const double span = vmax - vmin;

  const double left = 70.0;
  const double right = si ? 140.0 : 20.0;
  const double top = 40.0;
  const double bottom = 50.0;
  const double pw = std::max(1.0, spec.width - left - right);
  const double ph = std::max(1.0, spec.height - top - bottom);
  const double zero_y = top + ph * (vmax / span);
  const double group_w = pw / static_cast<double>(xs.size());
  const double bar_w = group_w * 0.8 / static_cast<double>(ss.size());

  std::ostringstream o;
  o << "<g class=\"grid\" stroke=\"#dddddd\">\n";
  for (int i = 1; i <= 5; ++i) {
    const double v = vmin + span * i / 5.0;
    const double y = top + ph * (vmax - v) / span;
    o << "<line x1=\"" << px(left) << "\" y1=\"" << px(y) << "\" x2=\"" << px(left + pw)
      << "\" y2=\"" << px(y) << "\"/>\n";
  }
  o << "</g>\n<g class=\"y-labels\" text-anchor=\"end\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = vmin + span * i / 5.0;
    const double y = top + ph * (vmax - v) / span;
    o << "<text x=\"" << px(left - 6) << "\" y=\"" << px(y + 4) << "\">" << tick_label(v)
      << "</text>\n";
  }
  o << "</g>\n<g class=\"bars\">\n";
  for (std::size_t g = 0; g < xs.size(); ++g) {
    for (std::size_t s = 0; s < ss.size(); ++s) {
      auto it = values.find({g, s});
      const double v = it == values.end() ? 0.0 : it->second;
      const double h = std::fabs(v) / span * ph;
      const double x = left + group_w * g + group_w * 0.1 + bar_w * s;
      const double y = v >= 0 ? zero_y - h : zero_y;
      o << "<rect x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\"" << px(bar_w)
        << "\" height=\"" << px(h) << "\" fill=\"" << kPalette[s % kPalette.size()] << "\"><title>"
        << xml_escape(label_of(xs[g])) << " / " << xml_escape(label_of(ss[s])) << ": "
        << xml_escape(tick_label(v)) << "</title></rect>\n";
    }
  }
  o << "</g>\n<line class=\"axis\" x1=\"" << px(left) << "\" y1=\"" << px(zero_y) << "\" x2=\""
    << px(left + pw) << "\" y2=\"" << px(zero_y) << "\" stroke=\"#333333\"/>\n";
  o << "<g class=\"x-labels\" text-anchor=\"middle\">\n";
  for (std::size_t g = 0; g < xs.size(); ++g) {
    o << "<text x=\"" << px(left + group_w * (g + 0.5)) << "\" y=\"" << px(top + ph + 18) << "\">"
      << xml_escape(label_of(xs[g])) << "</text>\n";
  }
  o << "</g>\n<text class=\"x-title\" x=\"" << px(left + pw / 2) << "\" y=\""
    << px(spec.height - 10.0) << "\" text-anchor=\"middle\">" << xml_escape(spec.x) << "</text>\n";
  if (si) {
    o << "<g class=\"legend\">\n";
    for (std::size_t s = 0; s < ss.size(); ++s) {
      const double y = top + 10 + 20.0 * s;
      o << "<circle cx=\"" << px(left + pw + 20) << "\" cy=\"" << px(y) << "\" r=\"6\" fill=\""
        << kPalette[s % kPalette.size()] << "\"/>\n"
        << "<text x=\"" << px(left + pw + 32) << "\" y=\"" << px(y + 4) << "\">"
        << xml_escape(label_of(ss[s])) << "</text>\n";
    }
    o << "</g>\n";
  }
  out += o.str();
  out += "</svg>\n";
  return out;
}

void emit_bar_chart(const ChartSpec& spec, const AggTable& table, const fs::path& path) {
  write_text(path, render_bar_chart(spec, table));
}

std::optional<ChartSpec> default_chart(std::string_view id) {
  ChartSpec c;
  c.table = std::string(id);
  if (id == "per_year") {
    c.x = "year";
    c.series = "source";
    c.y = "count";
    c.title = "Reviews per year";
  } else if (id == "yoy") {
    c.x = "year";
    c.series = "source";
    c.y = "pct_change";
    c.title = "Year-on-year change in review count (%)";
    c.where = {{"sentiment_split", std::string("all")}};
  } else if (id == "per_weekday") {
    c.x = "weekday_name";
    c.series = "source";
    c.y = "count";
    c.title = "Reviews per weekday";
  } else if (id == "per_month") {
    c.x = "month";
    c.series = "source";
    c.y = "count";
    c.title = "Reviews per month";
  } else if (id == "length_upvotes") {
    c.x = "bucket";
    c.y = "review_count";
    c.title = "Reviews by cleaned length (characters)";
    c.width = 1200;
  } else if (id == "sentiment_profile") {
    c.x = "source";
    c.series = "sentiment";
    c.y = "mean_length";
    c.title = "Mean review length by sentiment";
  } else {
    return std::nullopt;
  }
  return c;
}

}  // namespace reviewlake::report
