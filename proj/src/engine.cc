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


#include "reviewlake/engine.h"

namespace reviewlake::engine {

std::size_t default_parallelism() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::count:
      return "count";
    case MetricKind::sum:
      return "sum";
    case MetricKind::min:
      return "min";
    case MetricKind::max:
      return "max";
    case MetricKind::mean:
      return "mean";
    case MetricKind::median:
      return "median";
  }
  return "unknown";
}

}  // namespace reviewlake::engine
