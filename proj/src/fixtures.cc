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


#include "reviewlake/fixtures.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "reviewlake/calendar.h"
#include "reviewlake/clean.h"
#include "reviewlake/ingest.h"

namespace reviewlake::fixtures {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

constexpr int kFirstYear = 2014;
constexpr int kLastYear = 2022;
constexpr std::size_t kMaxBucket = 39;  // below the open-ended 2000+ bucket
constexpr double kDecayRatio = 0.7;
constexpr std::int64_t kUpvoteStep = 6;

// mt19937_64 output is specified exactly by the standard; the helpers below
// avoid the implementation-defined standard distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
  template <class C>
  const auto& pick(const C& c) {
    return c[static_cast<std::size_t>(between(0, static_cast<std::int64_t>(c.size()) - 1))];
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(between(0, static_cast<std::int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Non-stopword vocabulary indexed by word length 3..10.
const std::array<std::vector<std::string_view>, 11>& vocabulary() {
  static const std::array<std::vector<std::string_view>, 11> kWords = {{
      {},
      {},
      {},
      {"fun", "bad", "joy", "odd", "top", "wow", "new", "old", "hot", "big"},
      {"good", "nice", "cool", "slow", "fast", "cute", "epic", "fine", "loud", "warm"},
      {"great", "solid", "sweet", "cheap", "tasty", "broke", "fresh", "messy", "happy", "noisy"},
      {"lovely", "boring", "superb", "clunky", "decent", "bright", "sturdy", "normal", "costly",
       "gentle"},
      {"awesome", "amazing", "perfect", "average", "durable", "stylish", "useless", "fragile",
       "elegant", "awkward"},
      {"terrible", "horrible", "fabulous", "reliable", "charming", "annoying", "gorgeous",
       "pleasant", "mediocre", "flawless"},
      {"brilliant", "wonderful", "fantastic", "excellent", "expensive", "delicious", "recommend",
       "confusing", "enjoyable", "beautiful"},
      {"incredible", "impressive", "disgusting", "remarkable", "affordable", "frustrated",
       "convenient", "overpriced", "outrageous", "delightful"},
  }};
  return kWords;
}

std::string word_of_length(std::size_t len, Rng& rng) {
  std::string w(rng.pick(vocabulary()[len]));
  if (rng.chance(0.2)) w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

// Cleaned text of exactly `length` characters (length >= 3).
std::string clean_text_of_length(std::size_t length, Rng& rng) {
  std::string out;
  auto r = static_cast<std::int64_t>(length);
  while (r > 13) {
    const auto len = rng.between(3, std::min<std::int64_t>(10, r - 4));
    out += word_of_length(static_cast<std::size_t>(len), rng);
    out.push_back(' ');
    r -= len + 1;
  }
  if (r <= 10) {
    out += word_of_length(static_cast<std::size_t>(r), rng);
  } else {
    out += word_of_length(static_cast<std::size_t>(r - 4), rng);
    out.push_back(' ');
    out += word_of_length(3, rng);
  }
  return out;
}

// Decorates cleaned text with material the cleaner removes again: stopwords,
// digits, punctuation, emoji, odd spacing and outer quotes.
std::string add_noise(const std::string& clean, bool allow_newlines, Rng& rng) {
  static const std::vector<std::string_view> kInfix = {"10/10", "42", "2019", "#1", "!!", "...",
                                                       "-", "&", "\xF0\x9F\x98\x80", "***"};
  static const std::vector<std::string_view> kSuffix = {"!", ",", ".", "!!", "?", ":)"};
  const auto& stops = clean::Stoplist::bundled().words();
  std::string out;
  if (rng.chance(0.1)) out += rng.chance(0.5) ? "  " : " \"";
  std::size_t start = 0;
  bool first = true;
  while (start < clean.size()) {
    std::size_t end = clean.find(' ', start);
    if (end == std::string::npos) end = clean.size();
    if (!first) {
      const double sep = rng.unit();
      out += sep < 0.03 && allow_newlines ? "\n" : sep < 0.06 ? "  " : sep < 0.08 ? "\t" : " ";
    }
    first = false;
    if (rng.chance(0.25)) {
      if (rng.chance(0.6)) {
        std::string stop(rng.pick(stops));
        if (rng.chance(0.3)) stop[0] = static_cast<char>(stop[0] - 'a' + 'A');
        out += stop;
      } else {
        out += rng.pick(kInfix);
      }
      out.push_back(' ');
    }
    out.append(clean, start, end - start);
    if (rng.chance(0.2)) out += rng.pick(kSuffix);
    start = end + 1;
  }
  if (rng.chance(0.1)) out += " 10/10!!";
  if (rng.chance(0.1)) out += rng.chance(0.5) ? "\" " : "   ";
  return out;
}

struct SourceSpec {
  Source source;
  std::string file_name;
  bool jsonl;
  std::vector<std::string> header;
  std::vector<std::string_view> names;
};

const SourceSpec& spec_for(Source s) {
  static const std::array<SourceSpec, 4> kSpecs = {{
      {Source::amazon,
       "amazon.csv",
       false,
       {"marketplace", "customer_id", "review_id", "product_title", "star_rating", "helpful_votes",
        "review_date", "review_body"},
       {"USB-C Charger", "Noise Cancelling Headphones", "Smart Watch, Series 5",
        "The \"Deluxe\" Desk Lamp", "4K Monitor 27in", "Wireless Mouse", "Bluetooth Speaker",
        "Phone Case (2-pack)"}},
      {Source::yelp,
       "yelp.csv",
       false,
       {"review_id", "business_name", "sentiment", "useful", "date", "text"},
       {"Joe's Pizza", "Golden Dragon", "Cafe \"Le Petit\"", "Burger Barn", "Taco Town, Midtown",
        "Sushi Zen", "The Green Bowl", "Bella Napoli"}},
      {Source::steam,
       "steam.csv",
       false,
       {"app", "review", "voted_up", "votes_up", "date"},
       {"Portal 2", "Stardew Valley", "Terraria", "Hades", "Counter-Strike: Global Offensive",
        "The Witcher 3: Wild Hunt", "Celeste", "Factorio"}},
      {Source::imdb,
       "imdb.jsonl",
       true,
       {"review_id", "movie", "sentiment", "helpful", "review_date", "review_detail",
        "spoiler_tag"},
       {"The Matrix (1999)", "Parasite", "Inception", "Spirited Away", "Heat, Director's Cut",
        "\"Amelie\"", "Up", "Arrival"}},
  }};
  return kSpecs[static_cast<std::size_t>(s)];
}

struct ReasonRate {
  RejectReason reason;
  double rate;
};

std::vector<ReasonRate> reject_plan(Source s) {
  const bool jsonl = spec_for(s).jsonl;
  std::vector<ReasonRate> plan;
  if (jsonl) {
    plan.push_back({RejectReason::bad_json, 0.002});
    plan.push_back({RejectReason::unsupported_shape, 0.001});
    plan.push_back({RejectReason::missing_column, 0.001});
  } else {
    plan.push_back({RejectReason::ragged_row, 0.002});
  }
  plan.push_back({RejectReason::null_field, 0.003});
  plan.push_back({RejectReason::bad_encoding, 0.001});
  plan.push_back({RejectReason::bad_date, 0.003});
  plan.push_back({RejectReason::date_out_of_range, 0.001});
  plan.push_back({RejectReason::bad_label, 0.002});
  if (s != Source::steam) plan.push_back({RejectReason::neutral_dropped, 0.01});
  plan.push_back({RejectReason::bad_upvotes, 0.002});
  plan.push_back({RejectReason::empty_after_clean, 0.002});
  return plan;
}

struct Weights {
  std::array<double, 7> weekday;
  std::array<double, 12> month;
  std::map<int, double> year;
};

Weights weights_for(Source s, Profile profile) {
  Weights w;
  w.weekday.fill(1.0);
  w.month.fill(1.0);
  for (int y = kFirstYear; y <= kLastYear; ++y) w.year[y] = 1.0;
  if (profile == Profile::uniform) return w;
  if (s == Source::yelp || s == Source::imdb) {
    w.weekday[0] = 3.0;  // Monday
    w.weekday[5] = 3.0;  // Saturday
    w.weekday[6] = 3.0;  // Sunday
  }
  if (s == Source::amazon) {
    w.weekday[5] = 0.5;
    w.weekday[6] = 0.5;
  }
  if (s == Source::amazon || s == Source::imdb) {
    w.month[10] = 2.0;  // November
    w.month[11] = 2.0;  // December
  }
  for (int y = kFirstYear; y <= kLastYear; ++y) {
    w.year[y] = s == Source::steam ? 1.6 - 0.1 * (y - kFirstYear) : 1.0 + 0.15 * (y - kFirstYear);
  }
  return w;
}

CivilDate sample_date(const Weights& w, Rng& rng) {
  const std::int64_t first = days_from_civil({kFirstYear, 1, 1});
  const std::int64_t last = days_from_civil({kLastYear, 12, 31});
  double wmax = 0.0;
  for (const auto& [y, yw] : w.year) {
    wmax = std::max(wmax, yw * *std::max_element(w.month.begin(), w.month.end()) *
                              *std::max_element(w.weekday.begin(), w.weekday.end()));
  }
  for (;;) {
    const CivilDate d = civil_from_days(rng.between(first, last));
    const double weight =
        w.year.at(d.year) * w.month[d.month - 1] * w.weekday[iso_weekday(d) - 1];
    if (rng.unit() * wmax < weight) return d;
  }
}

struct Planned {
  enum class Kind { good, blank, reject } kind = Kind::good;
  RejectReason reason = RejectReason::bad_json;
  CivilDate date;
  std::uint8_t sentiment = 0;
  std::int64_t upvotes = 0;
  std::string text;  // cleaned text for good rows
};

Planned blank_row() {
  Planned p;
  p.kind = Planned::Kind::blank;
  return p;
}

Planned reject_row(RejectReason reason) {
  Planned p;
  p.kind = Planned::Kind::reject;
  p.reason = reason;
  return p;
}

std::string format_date(Source s, const CivilDate& d, Rng& rng) {
  char buf[64];
  switch (s) {
    case Source::amazon:
      if (rng.chance(0.7)) return to_iso(d);
      std::snprintf(buf, sizeof buf, "%02u/%02u/%04d", d.month, d.day, d.year);
      return buf;
    case Source::yelp:
      std::snprintf(buf, sizeof buf, "%s %02d:%02d:%02d", to_iso(d).c_str(),
                    static_cast<int>(rng.between(0, 23)), static_cast<int>(rng.between(0, 59)),
                    static_cast<int>(rng.between(0, 59)));
      return buf;
    case Source::steam:
      if (rng.chance(0.4)) return to_iso(d);
      return std::to_string(days_from_civil(d) * 86400 + rng.between(0, 86399));
    case Source::imdb:
      if (rng.chance(0.2)) return to_iso(d);
      std::snprintf(buf, sizeof buf, "%s %u, %04d", std::string(month_name(d.month)).c_str(), d.day,
                    d.year);
      return buf;
  }
  return to_iso(d);
}

std::string bad_date(Source s) {
  switch (s) {
    case Source::yelp:
      return "2019-02-30 10:00:00";
    case Source::imdb:
      return "February 30, 2019";
    default:
      return "2019-02-30";
  }
}

std::string out_of_range_date(Source s) {
  switch (s) {
    case Source::yelp:
      return "1965-03-01 12:00:00";
    case Source::imdb:
      return "March 1, 1965";
    default:
      return "1965-03-01";
  }
}

std::string format_sentiment(Source s, std::uint8_t sentiment, Rng& rng) {
  switch (s) {
    case Source::amazon:
      return sentiment ? (rng.chance(0.5) ? "5" : "4") : (rng.chance(0.5) ? "1" : "2");
    case Source::steam: {
      static const std::vector<std::string_view> kUp = {"true", "True", "TRUE", "1"};
      static const std::vector<std::string_view> kDown = {"false", "False", "FALSE", "0"};
      return std::string(sentiment ? rng.pick(kUp) : rng.pick(kDown));
    }
    default: {
      static const std::vector<std::string_view> kPos = {"positive", "Positive", "very positive",
                                                         "Very Positive"};
      static const std::vector<std::string_view> kNeg = {"negative", "Negative", "very negative",
                                                         "Very Negative"};
      return std::string(sentiment ? rng.pick(kPos) : rng.pick(kNeg));
    }
  }
}

std::string format_upvotes(std::int64_t upvotes, Rng& rng) {
  if (upvotes == 0 && rng.chance(0.5)) return "";
  return std::to_string(upvotes);
}

void append_json_string(std::string& out, std::string_view s) {
  out.push_back('"');
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(c);
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\t') {
      out += "\\t";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('"');
}

struct RawFields {
  std::string name, date, sentiment, upvotes, text;
};

RawFields render_fields(Source s, const Planned& p, const SourceSpec& spec, Rng& rng) {
  RawFields f;
  f.name = std::string(rng.pick(spec.names));
  if (rng.chance(0.05)) f.name = "  " + f.name;
  f.date = format_date(s, p.date, rng);
  f.sentiment = format_sentiment(s, p.sentiment, rng);
  f.upvotes = format_upvotes(p.upvotes, rng);
  f.text = add_noise(p.text, true, rng);
  if (p.kind != Planned::Kind::reject) return f;
  switch (p.reason) {
    case RejectReason::null_field:
      f.name.clear();
      break;
    case RejectReason::bad_encoding:
      f.text += " \xFF\xFE";
      break;
    case RejectReason::bad_date:
      f.date = bad_date(s);
      break;
    case RejectReason::date_out_of_range:
      f.date = out_of_range_date(s);
      break;
    case RejectReason::bad_label:
      f.sentiment = s == Source::amazon ? "7" : s == Source::steam ? "maybe" : "meh";
      break;
    case RejectReason::neutral_dropped:
      f.sentiment = s == Source::amazon ? "3" : "neutral";
      break;
    case RejectReason::bad_upvotes:
      f.upvotes = rng.chance(0.5) ? "-3" : "lots";
      break;
    case RejectReason::empty_after_clean:
      f.text = rng.chance(0.5) ? "123 456 !!" : "The a an THE";
      break;
    default:
      break;
  }
  return f;
}

std::string csv_row(Source s, const RawFields& f, std::uint64_t id, bool ragged, Rng& rng) {
  std::vector<std::string> cells;
  switch (s) {
    case Source::amazon:
      cells = {"US",      std::to_string(10000000 + rng.between(0, 8999999)),
               "R" + std::to_string(id), f.name, f.sentiment, f.upvotes, f.date, f.text};
      break;
    case Source::yelp:
      cells = {"y" + std::to_string(id), f.name, f.sentiment, f.upvotes, f.date, f.text};
      break;
    case Source::steam:
      cells = {f.name, f.text, f.sentiment, f.upvotes, f.date};
      break;
    case Source::imdb:
      break;
  }
  if (ragged) cells.push_back("unexpected");
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line.push_back(',');
    line += ingest::csv_escape(cells[i]);
  }
  line.push_back('\n');
  return line;
}

std::string jsonl_row(const Planned& p, const RawFields& f, std::uint64_t id, Rng& rng) {
  if (p.kind == Planned::Kind::reject && p.reason == RejectReason::bad_json) {
    return "{\"review_id\": \"rw" + std::to_string(id) + "\", \"movie\": \"Heat\", \"review_det\n";
  }
  std::string line = "{\"review_id\":";
  append_json_string(line, "rw" + std::to_string(id));
  line += ",\"movie\":";
  if (p.kind == Planned::Kind::reject && p.reason == RejectReason::unsupported_shape) {
    line += "{\"title\":";
    append_json_string(line, f.name);
    line += "}";
  } else if (p.kind == Planned::Kind::reject && p.reason == RejectReason::null_field &&
             rng.chance(0.5)) {
    line += "null";
  } else {
    append_json_string(line, f.name);
  }
  line += ",\"sentiment\":";
  append_json_string(line, f.sentiment);
  line += ",\"helpful\":";
  const bool numeric = !f.upvotes.empty() &&
                       f.upvotes.find_first_not_of("0123456789") == std::string::npos;
  if (numeric) {
    line += f.upvotes;
  } else {
    append_json_string(line, f.upvotes);
  }
  if (!(p.kind == Planned::Kind::reject && p.reason == RejectReason::missing_column)) {
    line += ",\"review_date\":";
    append_json_string(line, f.date);
  }
  line += ",\"review_detail\":";
  append_json_string(line, f.text);
  line += rng.chance(0.1) ? ",\"spoiler_tag\":true}\n" : ",\"spoiler_tag\":false}\n";
  return line;
}

// Number of review pairs per length bucket: a floored geometric series, with
// the rounding remainder on bucket 0, so counts never increase with length.
std::vector<std::uint64_t> geometric_quotas(std::uint64_t pairs) {
  std::vector<std::uint64_t> q(kMaxBucket + 1, 0);
  std::uint64_t used = 0;
  for (std::size_t b = 0; b <= kMaxBucket; ++b) {
    q[b] = static_cast<std::uint64_t>(std::floor(static_cast<double>(pairs) * (1.0 - kDecayRatio) *
                                                 std::pow(kDecayRatio, static_cast<double>(b))));
    used += q[b];
  }
  q[0] += pairs - used;
  return q;
}

SourceFile generate_source(Source s, const FixtureOptions& opt, SourceTruth& truth) {
  const SourceSpec& spec = spec_for(s);
  Rng rng(opt.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(s) * 0xD1B54A32D192ED03ULL +
          (opt.profile == Profile::paper_shaped ? 0x5851F42D4C957F2DULL : 0));
  const Weights w = weights_for(s, opt.profile);
  const bool paper = opt.profile == Profile::paper_shaped;

  truth.file_name = spec.file_name;
  truth.format = spec.jsonl ? "jsonl" : "csv";
  truth.weekday_weights = w.weekday;
  truth.month_weights = w.month;
  truth.year_weights = w.year;
  truth.longer_sentiment = !paper ? "either" : s == Source::imdb ? "positive" : "negative";

  const std::uint64_t n = opt.rows_per_source;
  std::vector<Planned> rows;
  rows.reserve(n);

  const std::uint64_t blanks = n / 1000;
  for (std::uint64_t i = 0; i < blanks; ++i) rows.push_back(blank_row());
  std::uint64_t planted = blanks;
  for (const auto& [reason, rate] : reject_plan(s)) {
    const auto count = static_cast<std::uint64_t>(std::floor(static_cast<double>(n) * rate));
    for (std::uint64_t i = 0; i < count; ++i) {
      rows.push_back(reject_row(reason));
    }
    if (count) truth.rejects[reason] += count;
    planted += count;
  }
  std::uint64_t good = n - planted;
  if (good % 2 == 1) {
    // Reviews come in pairs; the odd row out becomes an extra reject.
    const RejectReason odd = s == Source::steam ? RejectReason::bad_label
                                                : RejectReason::neutral_dropped;
    rows.push_back(reject_row(odd));
    ++truth.rejects[odd];
    --good;
  }
  const std::uint64_t pairs = good / 2;

  std::vector<std::size_t> pair_buckets;
  pair_buckets.reserve(pairs);
  if (paper) {
    const auto quota = geometric_quotas(pairs);
    for (std::size_t b = 0; b < quota.size(); ++b) pair_buckets.insert(pair_buckets.end(), quota[b], b);
  } else {
    for (std::uint64_t i = 0; i < pairs; ++i) {
      pair_buckets.push_back(static_cast<std::size_t>(rng.between(0, 9)));
    }
  }

  for (std::size_t b : pair_buckets) {
    const std::int64_t lo = b == 0 ? 3 : static_cast<std::int64_t>(b) * 50;
    const std::int64_t hi = static_cast<std::int64_t>(b) * 50 + 49;
    const std::int64_t delta = rng.between(1, 20);
    const std::int64_t short_len = rng.between(lo, hi - delta);
    const std::int64_t long_len = short_len + delta;
    Planned neg;
    Planned pos;
    neg.sentiment = 0;
    pos.sentiment = 1;
    bool neg_longer;
    if (paper) {
      neg_longer = s != Source::imdb;
      const std::int64_t base = kUpvoteStep * static_cast<std::int64_t>(b);
      neg.upvotes = base + rng.between(3, 5);
      pos.upvotes = base + rng.between(0, 2);
    } else {
      neg_longer = rng.chance(0.5);
      neg.upvotes = rng.between(0, 30);
      pos.upvotes = rng.between(0, 30);
    }
    const std::int64_t neg_len = neg_longer ? long_len : short_len;
    const std::int64_t pos_len = neg_longer ? short_len : long_len;
    neg.text = clean_text_of_length(static_cast<std::size_t>(neg_len), rng);
    pos.text = clean_text_of_length(static_cast<std::size_t>(pos_len), rng);
    rows.push_back(std::move(neg));
    rows.push_back(std::move(pos));
  }

  // Every row gets a plausible date; rejects keep theirs unless the reason is
  // about the date.
  for (auto& r : rows) {
    r.date = sample_date(w, rng);
    if (r.kind == Planned::Kind::reject) {
      r.text = clean_text_of_length(static_cast<std::size_t>(rng.between(3, 200)), rng);
      r.upvotes = rng.between(0, 30);
      r.sentiment = static_cast<std::uint8_t>(rng.between(0, 1));
    }
  }
  rng.shuffle(rows);

  truth.data_rows = n;
  truth.blank_lines = blanks;
  truth.accepted = good;
  truth.length_buckets.assign(kMaxBucket + 1, 0);
  truth.bucket_upvote_sums.assign(kMaxBucket + 1, 0);

  SourceFile file{s, spec.file_name, {}};
  std::string& out = file.contents;
  if (!spec.jsonl) {
    for (std::size_t i = 0; i < spec.header.size(); ++i) {
      if (i) out.push_back(',');
      out += spec.header[i];
    }
    out.push_back('\n');
  }
  std::uint64_t id = 0;
  for (const Planned& p : rows) {
    ++id;
    if (p.kind == Planned::Kind::blank) {
      out.push_back('\n');
      continue;
    }
    const RawFields f = render_fields(s, p, spec, rng);
    if (spec.jsonl) {
      out += jsonl_row(p, f, id, rng);
    } else {
      const bool ragged = p.kind == Planned::Kind::reject && p.reason == RejectReason::ragged_row;
      out += csv_row(s, f, id, ragged, rng);
    }
    if (p.kind != Planned::Kind::good) continue;
    ++truth.per_year[p.date.year];
    ++truth.per_month[p.date.month - 1];
    ++truth.per_weekday[iso_weekday(p.date) - 1];
    const std::size_t bucket = p.text.size() / 50;
    ++truth.length_buckets[bucket];
    truth.bucket_upvote_sums[bucket] += static_cast<std::uint64_t>(p.upvotes);
    ++truth.sentiment_count[p.sentiment];
    truth.sentiment_length_sum[p.sentiment] += p.text.size();
    truth.sentiment_upvote_sum[p.sentiment] += static_cast<std::uint64_t>(p.upvotes);
  }
  while (!truth.length_buckets.empty() && truth.length_buckets.back() == 0) {
    truth.length_buckets.pop_back();
    truth.bucket_upvote_sums.pop_back();
  }
  return file;
}

}  // namespace

std::string_view to_string(Profile profile) {
  return profile == Profile::uniform ? "uniform" : "paper_shaped";
}

std::optional<Profile> parse_profile(std::string_view name) {
  if (name == "uniform") return Profile::uniform;
  if (name == "paper_shaped") return Profile::paper_shaped;
  return std::nullopt;
}

Fixtures generate(const FixtureOptions& options) {
  Fixtures out;
  out.truth.options = options;
  for (Source s : kAllSources) {
    out.files.push_back(generate_source(s, options, out.truth.sources[s]));
  }
  return out;
}

std::string GroundTruth::to_json() const {
  ordered_json doc;
  doc["seed"] = options.seed;
  doc["profile"] = to_string(options.profile);
  doc["rows_per_source"] = options.rows_per_source;
  ordered_json sources_json = ordered_json::object();
  for (Source s : kAllSources) {
    auto it = sources.find(s);
    if (it == sources.end()) continue;
    const SourceTruth& t = it->second;
    ordered_json rejects = ordered_json::object();
    for (const auto& [reason, count] : t.rejects) rejects[to_string(reason)] = count;
    ordered_json years = ordered_json::object();
    for (const auto& [y, w] : t.year_weights) years[std::to_string(y)] = w;
    ordered_json per_year = ordered_json::object();
    for (const auto& [y, c] : t.per_year) per_year[std::to_string(y)] = c;
    ordered_json e;
    e["file"] = t.file_name;
    e["format"] = t.format;
    e["data_rows"] = t.data_rows;
    e["blank_lines"] = t.blank_lines;
    e["expected_accepted"] = t.accepted;
    e["expected_rejects"] = std::move(rejects);
    e["planted"] = {{"weekday_weights_mon_first", t.weekday_weights},
                    {"month_weights", t.month_weights},
                    {"year_weights", std::move(years)},
                    {"length_decay_ratio", options.profile == Profile::paper_shaped ? kDecayRatio : 0.0},
                    {"upvote_step_per_bucket", options.profile == Profile::paper_shaped
                                                   ? kUpvoteStep
                                                   : std::int64_t{0}},
                    {"longer_sentiment", t.longer_sentiment}};
    e["realized"] = {{"per_year", std::move(per_year)},
                     {"per_month", t.per_month},
                     {"per_weekday_mon_first", t.per_weekday},
                     {"length_buckets", t.length_buckets},
                     {"bucket_upvote_sums", t.bucket_upvote_sums},
                     {"sentiment_count", t.sentiment_count},
                     {"sentiment_length_sum", t.sentiment_length_sum},
                     {"sentiment_upvote_sum", t.sentiment_upvote_sum}};
    sources_json[std::string(to_string(s))] = std::move(e);
  }
  doc["sources"] = std::move(sources_json);
  return doc.dump(2) + "\n";
}

void write_fixtures(const Fixtures& fixtures, const fs::path& dir) {
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + (dir / name).string());
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    out.close();
    if (!out) throw IoError("write failed for " + (dir / name).string());
  };
  ordered_json config;
  ordered_json sources = ordered_json::array();
  for (const auto& f : fixtures.files) {
    write(f.file_name, f.contents);
    sources.push_back({{"source", to_string(f.source)}, {"input_path", f.file_name}});
  }
  write("ground_truth.json", fixtures.truth.to_json());
  config["sources"] = std::move(sources);
  config["lake_dir"] = "lake";
  config["report_dir"] = "reports";
  config["created_at"] = "2026-01-01T00:00:00Z";
  write("config.json", config.dump(2) + "\n");
}

}  // namespace reviewlake::fixtures
