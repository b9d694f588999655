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


#include "reviewlake/review.h"

#include <array>

namespace reviewlake {
namespace {

constexpr std::array<std::string_view, 3> kSchemes = {"binary_label", "five_class_label",
                                                      "star_rating"};
constexpr std::array<std::string_view, 5> kFormats = {"iso", "iso_datetime", "us_slash",
                                                      "long_month", "epoch_seconds"};

template <class E, std::size_t N>
std::optional<E> lookup(const std::array<std::string_view, N>& names, std::string_view name) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<E>(i);
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(SentimentScheme scheme) {
  return kSchemes[static_cast<std::size_t>(scheme)];
}

std::optional<SentimentScheme> parse_sentiment_scheme(std::string_view name) {
  return lookup<SentimentScheme>(kSchemes, name);
}

std::string_view to_string(DateFormat format) { return kFormats[static_cast<std::size_t>(format)]; }

std::optional<DateFormat> parse_date_format(std::string_view name) {
  return lookup<DateFormat>(kFormats, name);
}

}  // namespace reviewlake
