/*
 * Copyright 2026 the optionmc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/exact_sum.hpp"
#include "core/metrics.hpp"
#include "core/task.hpp"

namespace omc::engine {

enum class ExecMode { baseline, task_parallel, pipeline_parallel, combined };

/// Pure scheduling descriptor. Every mode produces bit-identical estimates;
/// the strategy only decides how the path range is walked.
struct ExecutionStrategy {
  ExecMode mode = ExecMode::baseline;
  unsigned workers = 1;    // P: task-parallel degree
  unsigned interleave = 1; // U: in-flight paths per worker

  /// `baseline | tp:P | pp:U | combined:P,U`
  static ExecutionStrategy parse(std::string_view text);
  std::string to_string() const;
  void validate() const; // mode/P/U consistency, throws config errors
};

struct IndexRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  std::uint64_t size() const noexcept { return end - begin; }
  bool operator==(const IndexRange&) const = default;
};

/// P contiguous ranges covering [0, N) exactly once; range p is
/// [floor(p*N/P), floor((p+1)*N/P)).
std::vector<IndexRange> partition_indices(std::uint64_t paths, unsigned workers);

struct WorkItem {
  std::uint64_t path_id = 0;
  std::uint32_t step = 0;
  bool operator==(const WorkItem&) const = default;
};

/// The order in which a worker advances its range with `interleave` in-flight
/// paths: paths proceed round-robin in blocks, the software analog of an
/// unrolled pipeline. Per-path results are unaffected by the order.
std::vector<WorkItem> interleave_schedule(IndexRange range, unsigned interleave,
                                          std::uint32_t steps);

/// Per-range partial: workers only ever hand these back, never per-path
/// arrays. Sums are accumulated exactly, so recombining partials from any
/// partitioning rounds to the same totals.
struct Partial {
  ExactSum sum;
  ExactSum sum_sq;
  std::uint64_t count = 0;

  void add(double value) {
    sum.add(value);
    sum_sq.add(value * value);
    count += 1;
  }
};

struct ReducedSums {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;
};

/// Combines partials in ascending range order, independent of which worker
/// finished first. Expects exactly one partial per range.
ReducedSums reduce_deterministic(std::span<const Partial> partials, std::size_t expected_ranges);

struct RunResult {
  double price = 0.0;     // discounted estimate
  double std_error = 0.0; // discounted standard error
  double latency_seconds = 0.0;
  std::uint64_t flops = 0;
  std::optional<double> energy_joules; // filled when a power trace is attached
  ExecutionStrategy strategy;
  std::uint64_t seed = 0;
  std::uint64_t paths = 0;
  std::uint32_t steps = 0;
};

/// MAP: simulate paths 0..N-1 under the strategy's schedule.
/// REDUCE: deterministic mean + discounting.
/// The price is bit-identical for every strategy given a fixed (task, seed).
RunResult run(const payoffs::OptionTask& task, const ExecutionStrategy& strategy,
              std::uint64_t seed, const metrics::OpCostTable& costs = {});

} // namespace omc::engine
