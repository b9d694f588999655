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

// Partitioned in-memory datasets with data-parallel per-record transforms and
// order-independent group-by aggregation.
//
// A dataset is split into N partitions (round-robin by insertion index). Every
// element remembers its insertion sequence number, so `to_vector()` returns the
// records in insertion order no matter how they were partitioned or filtered.
// Per-record functions may run on several worker threads at once and must be
// pure. Partial aggregates are merged on the calling thread.

#pragma once

#include <algorithm>
#include <atomic>
#include <concepts>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "reviewlake/table.h"
#include "reviewlake/types.h"

namespace reviewlake::engine {

struct ExecPolicy {
  // 1 runs everything on the calling thread; this is the reference path.
  std::size_t threads = 1;
};

// Number of hardware threads, at least 1.
std::size_t default_parallelism();

namespace detail {

// Calls fn(i) for every i in [0, n) using up to `threads` workers. If any call
// throws, the exception of the lowest failing index is rethrown.
template <class Fn>
void parallel_for(std::size_t n, std::size_t threads, const Fn& fn) {
  if (n == 0) return;
  const std::size_t workers = std::min(threads == 0 ? 1 : threads, n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

template <class T>
class PartitionedDataset {
 public:
  using value_type = T;

  PartitionedDataset() : PartitionedDataset(1) {}

  // Empty dataset with `partition_count` partitions.
  explicit PartitionedDataset(std::size_t partition_count) {
    if (partition_count == 0) throw ConfigError("partition_count must be at least 1");
    parts_.resize(partition_count);
    seq_.resize(partition_count);
  }

  // Record i goes to partition i % partition_count.
  static PartitionedDataset from_records(std::vector<T> records, std::size_t partition_count) {
    PartitionedDataset ds(partition_count);
    const std::size_t n = records.size();
    for (std::size_t p = 0; p < partition_count; ++p) {
      const std::size_t share = n / partition_count + (p < n % partition_count ? 1 : 0);
      ds.parts_[p].reserve(share);
      ds.seq_[p].reserve(share);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t p = i % partition_count;
      ds.parts_[p].push_back(std::move(records[i]));
      ds.seq_[p].push_back(i);
    }
    ds.total_ = n;
    return ds;
  }

  // Builds a dataset from already-partitioned records. `sequence[p][i]` is the
  // insertion rank of `parts[p][i]`; ranks must increase within a partition.
  static PartitionedDataset from_parts(std::vector<std::vector<T>> parts,
                                       std::vector<std::vector<std::uint64_t>> sequence) {
    if (parts.empty()) throw ConfigError("partition_count must be at least 1");
    if (parts.size() != sequence.size()) throw std::invalid_argument("sequence shape mismatch");
    PartitionedDataset ds(parts.size());
    for (std::size_t p = 0; p < parts.size(); ++p) {
      if (parts[p].size() != sequence[p].size()) {
        throw std::invalid_argument("sequence shape mismatch");
      }
      ds.total_ += parts[p].size();
    }
    ds.parts_ = std::move(parts);
    ds.seq_ = std::move(sequence);
    return ds;
  }

  std::size_t partition_count() const { return parts_.size(); }
  std::size_t size() const { return total_; }
  bool empty() const { return total_ == 0; }

  std::span<const T> partition(std::size_t p) const { return parts_.at(p); }
  std::span<const std::uint64_t> sequence(std::size_t p) const { return seq_.at(p); }

  // Records in insertion order.
  std::vector<T> to_vector() const& {
    std::vector<T> out;
    out.reserve(total_);
    for (const auto& [p, i] : insertion_order()) out.push_back(parts_[p][i]);
    return out;
  }

  std::vector<T> to_vector() && {
    std::vector<T> out;
    out.reserve(total_);
    for (const auto& [p, i] : insertion_order()) out.push_back(std::move(parts_[p][i]));
    return out;
  }

 private:
  std::vector<std::pair<std::uint32_t, std::uint32_t>> insertion_order() const {
    std::vector<std::pair<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>>> keyed;
    keyed.reserve(total_);
    for (std::size_t p = 0; p < parts_.size(); ++p) {
      for (std::size_t i = 0; i < parts_[p].size(); ++i) {
        keyed.push_back({seq_[p][i], {static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(i)}});
      }
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<std::uint32_t, std::uint32_t>> order;
    order.reserve(keyed.size());
    for (const auto& k : keyed) order.push_back(k.second);
    return order;
  }

  template <class U>
  friend class PartitionedDataset;

  std::vector<std::vector<T>> parts_;
  std::vector<std::vector<std::uint64_t>> seq_;
  std::size_t total_ = 0;
};

// Element-wise image of `ds` under `f`, same partition layout.
template <class T, class F>
auto map(const PartitionedDataset<T>& ds, const F& f, const ExecPolicy& policy = {}) {
  using U = std::decay_t<std::invoke_result_t<const F&, const T&>>;
  const std::size_t n = ds.partition_count();
  std::vector<std::vector<U>> parts(n);
  std::vector<std::vector<std::uint64_t>> seq(n);
  detail::parallel_for(n, policy.threads, [&](std::size_t p) {
    auto in = ds.partition(p);
    parts[p].reserve(in.size());
    for (const T& r : in) parts[p].push_back(f(r));
    auto s = ds.sequence(p);
    seq[p].assign(s.begin(), s.end());
  });
  return PartitionedDataset<U>::from_parts(std::move(parts), std::move(seq));
}

template <class U, class R>
struct FilterMapResult {
  PartitionedDataset<U> accepted;
  // In insertion order of the rejected inputs.
  std::vector<R> rejects;
};

// Applies `f: const T& -> std::variant<U, R>` to every record. Alternative 0 is
// kept, alternative 1 is collected as a reject.
// accepted.size() + rejects.size() == ds.size().
template <class T, class F>
auto filter_map(const PartitionedDataset<T>& ds, const F& f, const ExecPolicy& policy = {}) {
  using Out = std::decay_t<std::invoke_result_t<const F&, const T&>>;
  static_assert(std::variant_size_v<Out> == 2, "f must return std::variant<Accepted, Reject>");
  using U = std::variant_alternative_t<0, Out>;
  using R = std::variant_alternative_t<1, Out>;

  const std::size_t n = ds.partition_count();
  std::vector<std::vector<U>> parts(n);
  std::vector<std::vector<std::uint64_t>> seq(n);
  std::vector<std::vector<std::pair<std::uint64_t, R>>> rejected(n);
  detail::parallel_for(n, policy.threads, [&](std::size_t p) {
    auto in = ds.partition(p);
    auto s = ds.sequence(p);
    parts[p].reserve(in.size());
    seq[p].reserve(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
      Out out = f(in[i]);
      if (out.index() == 0) {
        parts[p].push_back(std::get<0>(std::move(out)));
        seq[p].push_back(s[i]);
      } else {
        rejected[p].emplace_back(s[i], std::get<1>(std::move(out)));
      }
    }
  });

  std::vector<std::pair<std::uint64_t, R>> all;
  for (auto& r : rejected) {
    for (auto& e : r) all.push_back(std::move(e));
  }
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  FilterMapResult<U, R> result{PartitionedDataset<U>::from_parts(std::move(parts), std::move(seq)),
                               {}};
  result.rejects.reserve(all.size());
  for (auto& e : all) result.rejects.push_back(std::move(e.second));
  return result;
}

// Concatenates the inputs in order. The result has `partition_count`
// partitions, defaulting to the first input's count (1 when there is none).
template <class T>
PartitionedDataset<T> union_all(const std::vector<PartitionedDataset<T>>& inputs,
                                std::optional<std::size_t> partition_count = std::nullopt) {
  const std::size_t parts =
      partition_count.value_or(inputs.empty() ? 1 : inputs.front().partition_count());
  std::size_t total = 0;
  for (const auto& d : inputs) total += d.size();
  std::vector<T> all;
  all.reserve(total);
  for (const auto& d : inputs) {
    auto v = d.to_vector();
    std::move(v.begin(), v.end(), std::back_inserter(all));
  }
  return PartitionedDataset<T>::from_records(std::move(all), parts);
}

// As above, but every record must have the same `shape(record)`; a mismatch
// raises SchemaError.
template <class T, class ShapeFn>
  requires std::invocable<const ShapeFn&, const T&>
PartitionedDataset<T> union_all(const std::vector<PartitionedDataset<T>>& inputs,
                                const ShapeFn& shape,
                                std::optional<std::size_t> partition_count = std::nullopt) {
  using Shape = std::decay_t<std::invoke_result_t<const ShapeFn&, const T&>>;
  std::optional<Shape> expected;
  for (std::size_t d = 0; d < inputs.size(); ++d) {
    for (std::size_t p = 0; p < inputs[d].partition_count(); ++p) {
      for (const T& r : inputs[d].partition(p)) {
        Shape s = shape(r);
        if (!expected) {
          expected = std::move(s);
        } else if (!(s == *expected)) {
          throw SchemaError("union: dataset " + std::to_string(d) +
                            " holds records of a different shape");
        }
      }
    }
  }
  return union_all(inputs, partition_count);
}

enum class MetricKind { count, sum, min, max, mean, median };

std::string_view to_string(MetricKind kind);

template <class T>
struct Metric {
  MetricKind kind = MetricKind::count;
  std::string field;                         // empty for count
  std::function<Value(const T&)> extract;    // unset for count
  std::string column;                        // output column name
};

template <class T>
struct AggSpec {
  std::vector<std::string> key_columns;
  std::function<GroupKey(const T&)> key;
  std::vector<Metric<T>> metrics;

  AggSpec& group_by(std::vector<std::string> columns, std::function<GroupKey(const T&)> fn) {
    key_columns = std::move(columns);
    key = std::move(fn);
    return *this;
  }

  AggSpec& count(std::string column = "count") {
    metrics.push_back({MetricKind::count, {}, {}, std::move(column)});
    return *this;
  }

  // `column` defaults to "<kind>_<field>".
  AggSpec& add(MetricKind kind, std::string field, std::function<Value(const T&)> extract,
               std::string column = {}) {
    if (kind == MetricKind::count) return count(column.empty() ? "count" : std::move(column));
    if (column.empty()) column = std::string(to_string(kind)) + "_" + field;
    metrics.push_back({kind, std::move(field), std::move(extract), std::move(column)});
    return *this;
  }
};

namespace detail {

inline int compare_numeric(const Value& a, const Value& b) {
  const double x = as_double(a);
  const double y = as_double(b);
  if (x < y) return -1;
  if (y < x) return 1;
  // Equal magnitude: integers order before doubles so the choice is stable.
  return static_cast<int>(a.index()) - static_cast<int>(b.index());
}

struct MetricState {
  std::int64_t int_sum = 0;
  std::vector<double> doubles;  // floating inputs, summed sorted at finalization
  std::optional<Value> lo;
  std::optional<Value> hi;
  std::vector<double> values;  // median inputs

  void add(MetricKind kind, const Value& v) {
    switch (kind) {
      case MetricKind::count:
        break;
      case MetricKind::sum:
      case MetricKind::mean:
        if (const auto* i = std::get_if<std::int64_t>(&v)) {
          if (__builtin_add_overflow(int_sum, *i, &int_sum)) {
            throw QueryError("integer overflow in sum");
          }
        } else {
          doubles.push_back(std::get<double>(v));
        }
        break;
      case MetricKind::min:
        if (!lo || compare_numeric(v, *lo) < 0) lo = v;
        break;
      case MetricKind::max:
        if (!hi || compare_numeric(v, *hi) > 0) hi = v;
        break;
      case MetricKind::median:
        values.push_back(as_double(v));
        break;
    }
  }

  void merge(MetricState&& other) {
    if (__builtin_add_overflow(int_sum, other.int_sum, &int_sum)) {
      throw QueryError("integer overflow in sum");
    }
    doubles.insert(doubles.end(), other.doubles.begin(), other.doubles.end());
    values.insert(values.end(), other.values.begin(), other.values.end());
    if (other.lo && (!lo || compare_numeric(*other.lo, *lo) < 0)) lo = std::move(other.lo);
    if (other.hi && (!hi || compare_numeric(*other.hi, *hi) > 0)) hi = std::move(other.hi);
  }

  Value sum() {
    if (doubles.empty()) return int_sum;
    std::sort(doubles.begin(), doubles.end());
    double total = static_cast<double>(int_sum);
    for (double d : doubles) total += d;
    return total;
  }
};

struct GroupState {
  std::int64_t rows = 0;
  std::vector<MetricState> metrics;
};

using Partial = std::map<GroupKey, GroupState>;

// Exact median; even-length groups take the mean of the two middle values.
inline double median_of(std::vector<double>& xs) {
  const std::size_t n = xs.size();
  const std::size_t mid = n / 2;
  std::nth_element(xs.begin(), xs.begin() + mid, xs.end());
  const double upper = xs[mid];
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(xs.begin(), xs.begin() + mid);
  return (lower + upper) / 2.0;
}

}  // namespace detail

// One row per distinct key, sorted by key. count/sum/min/max are merged across
// partitions; mean is sum/count at finalization; median collects values.
// A non-numeric metric input raises QueryError naming the offending record by
// insertion rank (the lowest rank among all failing records).
template <class T>
AggTable group_aggregate(const PartitionedDataset<T>& ds, const AggSpec<T>& spec,
                         std::string name = {}, const ExecPolicy& policy = {}) {
  const std::size_t n = ds.partition_count();
  const std::size_t m = spec.metrics.size();
  std::vector<detail::Partial> partials(n);
  std::vector<std::optional<std::pair<std::uint64_t, std::string>>> failures(n);

  detail::parallel_for(n, policy.threads, [&](std::size_t p) {
    auto records = ds.partition(p);
    auto seq = ds.sequence(p);
    auto& out = partials[p];
    for (std::size_t i = 0; i < records.size(); ++i) {
      const T& r = records[i];
      auto [it, inserted] = out.try_emplace(spec.key(r));
      auto& g = it->second;
      if (inserted) g.metrics.resize(m);
      ++g.rows;
      for (std::size_t k = 0; k < m; ++k) {
        const auto& metric = spec.metrics[k];
        if (metric.kind == MetricKind::count) continue;
        Value v = metric.extract(r);
        if (!is_numeric(v)) {
          failures[p] = {seq[i], "query '" + name + "': metric " +
                                     std::string(to_string(metric.kind)) + "(" + metric.field +
                                     ") got non-numeric value \"" + std::get<std::string>(v) +
                                     "\" at record #" + std::to_string(seq[i]) + " (partition " +
                                     std::to_string(p) + ", offset " + std::to_string(i) + ")"};
          return;
        }
        g.metrics[k].add(metric.kind, v);
      }
    }
  });

  const std::optional<std::pair<std::uint64_t, std::string>>* first = nullptr;
  for (const auto& f : failures) {
    if (f && (!first || f->first < (*first)->first)) first = &f;
  }
  if (first) throw QueryError((*first)->second);

  detail::Partial merged;
  for (auto& partial : partials) {
    for (auto& [key, state] : partial) {
      auto [it, inserted] = merged.try_emplace(key);
      auto& g = it->second;
      if (inserted) {
        g = std::move(state);
        continue;
      }
      g.rows += state.rows;
      for (std::size_t k = 0; k < m; ++k) g.metrics[k].merge(std::move(state.metrics[k]));
    }
    partial.clear();
  }

  AggTable table;
  table.name = std::move(name);
  table.columns = spec.key_columns;
  table.key_columns = spec.key_columns.size();
  for (const auto& metric : spec.metrics) table.columns.push_back(metric.column);
  table.rows.reserve(merged.size());
  for (auto& [key, g] : merged) {
    Row row = key;
    for (std::size_t k = 0; k < m; ++k) {
      auto& st = g.metrics[k];
      switch (spec.metrics[k].kind) {
        case MetricKind::count:
          row.emplace_back(g.rows);
          break;
        case MetricKind::sum:
          row.push_back(st.sum());
          break;
        case MetricKind::min:
          row.push_back(*st.lo);
          break;
        case MetricKind::max:
          row.push_back(*st.hi);
          break;
        case MetricKind::mean:
          row.emplace_back(as_double(st.sum()) / static_cast<double>(g.rows));
          break;
        case MetricKind::median:
          row.emplace_back(detail::median_of(st.values));
          break;
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace reviewlake::engine
