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


#include "reviewlake/clean.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <sstream>

#include "reviewlake/hash.h"
#include "reviewlake_embedded_data.h"

namespace reviewlake::clean {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
char lower(char c) { return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c; }

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = lower(c);
  return out;
}

// Lowercased, with runs of whitespace, '_' and '-' folded into one space.
std::string fold_label(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c) || c == '_' || c == '-') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(lower(c));
  }
  return out;
}

// Reads min_width..max_width digits at `pos`; fails if more digits follow.
bool read_number(std::string_view s, std::size_t& pos, std::size_t min_width,
                 std::size_t max_width, unsigned& out) {
  std::size_t n = 0;
  unsigned v = 0;
  while (pos + n < s.size() && n < max_width && is_digit(s[pos + n])) {
    v = v * 10 + static_cast<unsigned>(s[pos + n] - '0');
    ++n;
  }
  if (n < min_width) return false;
  if (pos + n < s.size() && is_digit(s[pos + n])) return false;
  pos += n;
  out = v;
  return true;
}

bool expect(std::string_view s, std::size_t& pos, char c) {
  if (pos < s.size() && s[pos] == c) {
    ++pos;
    return true;
  }
  return false;
}

enum class Match { none, invalid, ok };

struct Parsed {
  Match match = Match::none;
  CivilDate date;
};

Parsed check(int year, unsigned month, unsigned day) {
  CivilDate d{year, month, day};
  return is_valid(d) ? Parsed{Match::ok, d} : Parsed{Match::invalid, {}};
}

Parsed parse_iso_layout(std::string_view s, bool with_time) {
  std::size_t pos = 0;
  unsigned y, m, d;
  if (!read_number(s, pos, 4, 4, y) || !expect(s, pos, '-') || !read_number(s, pos, 2, 2, m) ||
      !expect(s, pos, '-') || !read_number(s, pos, 2, 2, d)) {
    return {};
  }
  if (with_time) {
    unsigned hh, mm, ss;
    if (!(expect(s, pos, ' ') || expect(s, pos, 'T')) || !read_number(s, pos, 2, 2, hh) ||
        !expect(s, pos, ':') || !read_number(s, pos, 2, 2, mm) || !expect(s, pos, ':') ||
        !read_number(s, pos, 2, 2, ss) || pos != s.size()) {
      return {};
    }
    if (hh > 23 || mm > 59 || ss > 60) return {Match::invalid, {}};
  } else if (pos != s.size()) {
    return {};
  }
  return check(static_cast<int>(y), m, d);
}

Parsed parse_us_slash(std::string_view s) {
  std::size_t pos = 0;
  unsigned m, d, y;
  if (!read_number(s, pos, 1, 2, m) || !expect(s, pos, '/') || !read_number(s, pos, 1, 2, d) ||
      !expect(s, pos, '/') || !read_number(s, pos, 4, 4, y) || pos != s.size()) {
    return {};
  }
  return check(static_cast<int>(y), m, d);
}

Parsed parse_long_month(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size() && is_alpha(s[pos])) ++pos;
  const std::string word = to_lower(s.substr(0, pos));
  unsigned month = 0;
  for (unsigned m = 1; m <= 12; ++m) {
    if (word == to_lower(month_name(m))) month = m;
  }
  if (month == 0) return {};
  if (!expect(s, pos, ' ')) return {};
  while (pos < s.size() && s[pos] == ' ') ++pos;
  unsigned d, y;
  if (!read_number(s, pos, 1, 2, d) || !expect(s, pos, ',')) return {};
  while (pos < s.size() && s[pos] == ' ') ++pos;
  if (!read_number(s, pos, 4, 4, y) || pos != s.size()) return {};
  return check(static_cast<int>(y), month, d);
}

// Days since the epoch, floored. Absurd magnitudes saturate far outside the window.
Match parse_epoch(std::string_view s, std::int64_t& days) {
  std::size_t pos = 0;
  const bool negative = expect(s, pos, '-');
  if (pos == s.size()) return Match::none;
  std::int64_t seconds = 0;
  bool overflow = false;
  for (; pos < s.size(); ++pos) {
    if (!is_digit(s[pos])) return Match::none;
    if (!overflow && (__builtin_mul_overflow(seconds, 10, &seconds) ||
                      __builtin_add_overflow(seconds, s[pos] - '0', &seconds))) {
      overflow = true;
    }
  }
  if (overflow) {
    days = negative ? std::numeric_limits<std::int64_t>::min() / 2
                    : std::numeric_limits<std::int64_t>::max() / 2;
    return Match::ok;
  }
  if (negative) seconds = -seconds;
  // Floor division so times before the epoch land on the previous day.
  days = seconds / 86400 - ((seconds % 86400 < 0) ? 1 : 0);
  return Match::ok;
}

bool in_window(const CivilDate& d) { return kEarliestDate <= d && d <= kLatestDate; }

}  // namespace

// ---------------------------------------------------------------------------
// Stoplist

Stoplist Stoplist::from_text(std::string_view text, std::string source_path) {
  Stoplist s;
  s.source_path_ = std::move(source_path);
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    while (!line.empty() && is_space(line.front())) line.remove_prefix(1);
    while (!line.empty() && is_space(line.back())) line.remove_suffix(1);
    if (line.empty()) continue;
    for (char c : line) {
      if (c < 'a' || c > 'z') {
        throw MappingError(s.source_path_ + ":" + std::to_string(line_no) +
                           ": stopword entries must be lowercase alphabetic, got '" +
                           std::string(line) + "'");
      }
    }
    s.set_.emplace(line);
  }
  s.sorted_.assign(s.set_.begin(), s.set_.end());
  std::sort(s.sorted_.begin(), s.sorted_.end());
  std::string joined;
  for (std::size_t i = 0; i < s.sorted_.size(); ++i) {
    if (i) joined.push_back('\n');
    joined += s.sorted_[i];
  }
  s.checksum_ = sha256_hex(joined);
  return s;
}

Stoplist Stoplist::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read stoplist " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str(), path.string());
}

const Stoplist& Stoplist::bundled() {
  static const Stoplist kBundled = from_text(embedded::kStopwords, "<bundled>");
  return kBundled;
}

bool Stoplist::contains(std::string_view token) const {
  thread_local std::string folded;
  folded.assign(token);
  for (char& c : folded) c = lower(c);
  return set_.find(folded) != set_.end();
}

// ---------------------------------------------------------------------------
// Text

std::string trim_outer(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (is_space(s[b]) || s[b] == '"')) ++b;
  while (e > b && (is_space(s[e - 1]) || s[e - 1] == '"')) --e;
  return std::string(s.substr(b, e - b));
}

std::string strip_non_alpha(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (!is_alpha(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string remove_stopwords(std::string_view s, const Stoplist& stops) {
  std::string out;
  out.reserve(s.size());
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t end = s.find(' ', start);
    if (end == std::string_view::npos) end = s.size();
    const std::string_view token = s.substr(start, end - start);
    if (!token.empty() && !stops.contains(token)) {
      if (!out.empty()) out.push_back(' ');
      out.append(token);
    }
    start = end + 1;
  }
  return out;
}

std::string clean_text(std::string_view s, const Stoplist& stops) {
  return remove_stopwords(strip_non_alpha(trim_outer(s)), stops);
}

bool is_clean_text(std::string_view s) {
  if (s.empty()) return true;
  if (s.front() == ' ' || s.back() == ' ') return false;
  char prev = 'a';
  for (char c : s) {
    if (c == ' ') {
      if (prev == ' ') return false;
    } else if (!is_alpha(c)) {
      return false;
    }
    prev = c;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Fields

std::variant<std::uint8_t, RejectReason> map_sentiment(std::string_view raw,
                                                       SentimentScheme scheme) {
  const std::string label = fold_label(raw);
  switch (scheme) {
    case SentimentScheme::five_class_label:
      if (label == "very negative" || label == "negative") return std::uint8_t{0};
      if (label == "positive" || label == "very positive") return std::uint8_t{1};
      if (label == "neutral") return RejectReason::neutral_dropped;
      return RejectReason::bad_label;
    case SentimentScheme::binary_label:
      if (label == "negative" || label == "false" || label == "0") return std::uint8_t{0};
      if (label == "positive" || label == "true" || label == "1") return std::uint8_t{1};
      return RejectReason::bad_label;
    case SentimentScheme::star_rating:
      if (label == "1" || label == "2") return std::uint8_t{0};
      if (label == "4" || label == "5") return std::uint8_t{1};
      if (label == "3") return RejectReason::neutral_dropped;
      return RejectReason::bad_label;
  }
  return RejectReason::bad_label;
}

std::variant<CivilDate, RejectReason> normalize_date(std::string_view raw,
                                                     std::span<const DateFormat> formats) {
  for (DateFormat f : formats) {
    Parsed p;
    switch (f) {
      case DateFormat::iso:
        p = parse_iso_layout(raw, false);
        break;
      case DateFormat::iso_datetime:
        p = parse_iso_layout(raw, true);
        break;
      case DateFormat::us_slash:
        p = parse_us_slash(raw);
        break;
      case DateFormat::long_month:
        p = parse_long_month(raw);
        break;
      case DateFormat::epoch_seconds: {
        std::int64_t days = 0;
        if (parse_epoch(raw, days) == Match::none) break;
        if (days < days_from_civil(kEarliestDate) || days > days_from_civil(kLatestDate)) {
          return RejectReason::date_out_of_range;
        }
        return civil_from_days(days);
      }
    }
    if (p.match == Match::none) continue;
    if (p.match == Match::invalid) return RejectReason::bad_date;
    if (!in_window(p.date)) return RejectReason::date_out_of_range;
    return p.date;
  }
  return RejectReason::bad_date;
}

std::variant<std::int64_t, RejectReason> parse_upvotes(std::string_view raw) {
  std::int64_t v = 0;
  for (char c : raw) {
    if (!is_digit(c)) return RejectReason::bad_upvotes;
    if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, c - '0', &v)) {
      return RejectReason::bad_upvotes;
    }
  }
  return v;
}

std::variant<UnifiedReview, RejectRecord> clean_review(const UnifiedDraft& draft,
                                                       const Stoplist& stops,
                                                       const ingest::SourceMapping& mapping) {
  auto reject = [&](RejectReason reason, std::string detail = {}) {
    return RejectRecord{draft.source, draft.row_number, reason, std::move(detail)};
  };

  UnifiedReview out;
  out.source = draft.source;
  out.name = trim_outer(draft.name_raw);
  const std::string date = trim_outer(draft.date_raw);
  const std::string sentiment = trim_outer(draft.sentiment_raw);
  const std::string upvotes = trim_outer(draft.upvotes_raw);
  const std::string text = trim_outer(draft.text_raw);

  if (out.name.empty()) return reject(RejectReason::null_field, "name");
  if (text.empty()) return reject(RejectReason::null_field, "text");

  auto d = normalize_date(date, mapping.date_formats);
  if (auto* r = std::get_if<RejectReason>(&d)) return reject(*r, date);
  out.creation_date = std::get<CivilDate>(d);

  auto s = map_sentiment(sentiment, mapping.sentiment_scheme);
  if (auto* r = std::get_if<RejectReason>(&s)) return reject(*r, sentiment);
  out.sentiment = std::get<std::uint8_t>(s);

  auto u = parse_upvotes(upvotes);
  if (auto* r = std::get_if<RejectReason>(&u)) return reject(*r, upvotes);
  out.upvotes = std::get<std::int64_t>(u);

  out.review_text = remove_stopwords(strip_non_alpha(text), stops);
  if (out.review_text.empty()) return reject(RejectReason::empty_after_clean);
  return out;
}

}  // namespace reviewlake::clean
