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

#include <map>
#include <regex>
#include <string>
#include <vector>

#include "reviewlake/report.h"
#include "test_support.h"

namespace reviewlake::report {
namespace {

AggTable weekday_table(bool zeros = false) {
  AggTable t;
  t.name = "per_weekday";
  t.columns = {"weekday", "weekday_name", "source", "count"};
  t.key_columns = 3;
  static const char* kDays[] = {"Monday", "Tuesday", "Wednesday", "Thursday",
                                "Friday", "Saturday", "Sunday"};
  static const char* kSources[] = {"amazon", "imdb", "steam", "yelp"};
  for (std::int64_t d = 1; d <= 7; ++d) {
    for (int s = 0; s < 4; ++s) {
      const std::int64_t n = zeros ? 0 : d * 37 + s * 11 + (d == 6 ? 400 : 0);
      t.rows.push_back({d, std::string(kDays[d - 1]), std::string(kSources[s]), n});
    }
  }
  return t;
}

ChartSpec weekday_chart() { return *default_chart("per_weekday"); }

struct Bar {
  double y, height;
  double value;
};

std::vector<Bar> bars(const std::string& svg) {
  static const std::regex rect(
      "<rect x=\"[-0-9.]+\" y=\"([-0-9.]+)\" width=\"[0-9.]+\" height=\"([0-9.]+)\"[^>]*><title>[^<]*: "
      "([-0-9.]+)</title>");
  std::vector<Bar> out;
  for (std::sregex_iterator it(svg.begin(), svg.end(), rect), end; it != end; ++it) {
    out.push_back({std::stod((*it)[1]), std::stod((*it)[2]), std::stod((*it)[3])});
  }
  return out;
}

std::size_t count_of(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) ++n;
  return n;
}

TEST(TableCsv, Layout) {
  AggTable t;
  t.name = "x";
  t.columns = {"k", "mean"};
  t.key_columns = 1;
  t.rows = {{std::string("a,b"), 2.0}, {std::string("say \"hi\""), 1.0 / 3.0}};
  EXPECT_EQ(table_to_csv(t), "k,mean\n\"a,b\",2.000000\n\"say \"\"hi\"\"\",0.333333\n");
  t.rows.clear();
  EXPECT_EQ(table_to_csv(t), "k,mean\n");
  EXPECT_EQ(table_to_json(t), "[]\n");
}

TEST(TableJson, Layout) {
  AggTable t;
  t.columns = {"year", "source", "count", "mean"};
  t.key_columns = 2;
  t.rows = {{std::int64_t{2020}, std::string("yelp"), std::int64_t{3}, -0.0}};
  const std::string json = table_to_json(t);
  EXPECT_LT(json.find("\"year\""), json.find("\"source\""));
  EXPECT_LT(json.find("\"count\""), json.find("\"mean\""));
  EXPECT_NE(json.find("0.000000"), std::string::npos);
  EXPECT_EQ(json.find("-0.000000"), std::string::npos);
}

TEST(Tables, EmitThenReparse) {
  AggTable t;
  t.name = "yoy";
  t.columns = {"source", "sentiment_split", "year", "pct_change"};
  t.key_columns = 3;
  t.rows = {{std::string("amazon"), std::string("all"), std::int64_t{2015}, 12.5},
            {std::string("amazon"), std::string("all"), std::int64_t{2016}, -20.0},
            {std::string("amazon"), std::string("all"), std::string("median"), -3.75},
            {std::string("yelp, \"inc\"\nz"), std::string("negative"), std::int64_t{2016}, 0.0}};
  testing::TempDir tmp;
  for (TableFormat f : {TableFormat::csv, TableFormat::json}) {
    const auto path = tmp / ("yoy." + std::string(extension(f)));
    emit_table(t, f, path);
    const std::string text = testing::read_file(path);
    AggTable back = f == TableFormat::csv ? table_from_csv(text, "yoy", 3) : table_from_json(text, "yoy", 3);
    EXPECT_EQ(back, t) << text;
  }
  emit_table(weekday_table(), TableFormat::csv, tmp / "w.csv");
  EXPECT_EQ(count_of(testing::read_file(tmp / "w.csv"), "\n"), 29u);
}

TEST(Tables, FormatNames) {
  EXPECT_EQ(parse_table_format("csv"), TableFormat::csv);
  EXPECT_EQ(parse_table_format("json"), TableFormat::json);
  EXPECT_FALSE(parse_table_format("xml"));
}

TEST(Chart, OneRectPerBar) {
  const std::string svg = render_bar_chart(weekday_chart(), weekday_table());
  EXPECT_EQ(count_of(svg, "<rect"), 28u);
  EXPECT_EQ(bars(svg).size(), 28u);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Chart, HeightsProportionalToValues) {
  const ChartSpec spec = weekday_chart();
  const std::string svg = render_bar_chart(spec, weekday_table());
  double vmax = 0;
  for (const auto& b : bars(svg)) vmax = std::max(vmax, b.value);
  const double plot_height = [&] {
    double h = 0;
    for (const auto& b : bars(svg)) h = std::max(h, b.height);
    return h;
  }();
  for (const auto& b : bars(svg)) EXPECT_NEAR(b.height, b.value / vmax * plot_height, 0.5);
  // Bars share one baseline.
  for (const auto& b : bars(svg)) EXPECT_NEAR(b.y + b.height, bars(svg)[0].y + bars(svg)[0].height, 0.01);
}

TEST(Chart, AllZeroAxis) {
  const std::string svg = render_bar_chart(weekday_chart(), weekday_table(true));
  auto bs = bars(svg);
  ASSERT_EQ(bs.size(), 28u);
  for (const auto& b : bs) EXPECT_EQ(b.height, 0.0);
  EXPECT_NE(svg.find(">1</text>"), std::string::npos);  // axis max 1
}

TEST(Chart, EmptyTableSaysNoData) {
  AggTable t = weekday_table();
  t.rows.clear();
  const std::string svg = render_bar_chart(weekday_chart(), t);
  EXPECT_NE(svg.find(">no data</text>"), std::string::npos);
  EXPECT_EQ(count_of(svg, "<rect"), 0u);
}

TEST(Chart, Deterministic) {
  testing::TempDir tmp;
  emit_bar_chart(weekday_chart(), weekday_table(), tmp / "a.svg");
  emit_bar_chart(weekday_chart(), weekday_table(), tmp / "b.svg");
  EXPECT_EQ(testing::read_file(tmp / "a.svg"), testing::read_file(tmp / "b.svg"));
  EXPECT_EQ(render_bar_chart(weekday_chart(), weekday_table()), testing::read_file(tmp / "a.svg"));
}

TEST(Chart, Errors) {
  ChartSpec spec = weekday_chart();
  spec.series.reset();
  EXPECT_THROW(render_bar_chart(spec, weekday_table()), ConfigError);
  spec = weekday_chart();
  spec.y = "source";
  EXPECT_THROW(render_bar_chart(spec, weekday_table()), SchemaError);
  spec = weekday_chart();
  spec.x = "nope";
  EXPECT_THROW(render_bar_chart(spec, weekday_table()), ConfigError);
}

TEST(Chart, DefaultsExistForEveryQuery) {
  for (const char* id : {"per_year", "yoy", "per_weekday", "per_month", "length_upvotes", "sentiment_profile"}) {
    auto spec = default_chart(id);
    ASSERT_TRUE(spec) << id;
    EXPECT_EQ(spec->table, id);
  }
  EXPECT_FALSE(default_chart("nope"));
}

TEST(Chart, NegativeValuesExtendAxisBelowZero) {
  AggTable t;
  t.name = "yoy";
  t.columns = {"source", "sentiment_split", "year", "pct_change"};
  t.key_columns = 3;
  t.rows = {{std::string("amazon"), std::string("all"), std::int64_t{2015}, -40.0},
            {std::string("amazon"), std::string("all"), std::int64_t{2016}, 20.0}};
  const std::string svg = render_bar_chart(*default_chart("yoy"), t);
  auto bs = bars(svg);
  ASSERT_EQ(bs.size(), 2u);
  EXPECT_NEAR(bs[0].height, 2 * bs[1].height, 0.02);
}

}  // namespace
}  // namespace reviewlake::report
