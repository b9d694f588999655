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


#include "reviewlake/types.h"

#include <array>

namespace reviewlake {
namespace {

constexpr std::array<std::string_view, 4> kSourceNames = {"amazon", "yelp", "steam", "imdb"};

constexpr std::array<std::string_view, kRejectReasonCount> kReasonNames = {
    "ragged_row",      "bad_json",    "unsupported_shape", "missing_column", "null_field",
    "oversize_field",  "bad_encoding", "neutral_dropped",  "bad_label",      "bad_date",
    "date_out_of_range", "bad_upvotes", "empty_after_clean",
};

}  // namespace

std::string_view to_string(Source source) { return kSourceNames[static_cast<std::size_t>(source)]; }

std::optional<Source> parse_source(std::string_view name) {
  for (std::size_t i = 0; i < kSourceNames.size(); ++i) {
    if (kSourceNames[i] == name) return static_cast<Source>(i);
  }
  return std::nullopt;
}

std::string_view to_string(RejectReason reason) {
  return kReasonNames[static_cast<std::size_t>(reason)];
}

std::optional<RejectReason> parse_reject_reason(std::string_view name) {
  for (std::size_t i = 0; i < kReasonNames.size(); ++i) {
    if (kReasonNames[i] == name) return static_cast<RejectReason>(i);
  }
  return std::nullopt;
}

}  // namespace reviewlake
