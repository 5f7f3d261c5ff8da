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
#include "core/engine.hpp"

#include <charconv>
#include <exception>
#include <thread>

#include "core/error.hpp"
#include "core/path.hpp"

namespace omc::engine {

namespace {

unsigned parse_count(std::string_view text, std::string_view what) {
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0)
    fail(errc::config, "strategy: " + std::string(what) + " must be a positive integer, got '" +
                           std::string(text) + "'");
  return value;
}

} // namespace

ExecutionStrategy ExecutionStrategy::parse(std::string_view text) {
  ExecutionStrategy strategy;
  if (text == "baseline") {
    strategy.mode = ExecMode::baseline;
  } else if (text.starts_with("tp:")) {
    strategy.mode = ExecMode::task_parallel;
    strategy.workers = parse_count(text.substr(3), "P");
  } else if (text.starts_with("pp:")) {
    strategy.mode = ExecMode::pipeline_parallel;
    strategy.interleave = parse_count(text.substr(3), "U");
  } else if (text.starts_with("combined:")) {
    const std::string_view rest = text.substr(9);
    const std::size_t comma = rest.find(',');
    if (comma == std::string_view::npos)
      fail(errc::config, "strategy: combined takes 'combined:P,U'");
    strategy.mode = ExecMode::combined;
    strategy.workers = parse_count(rest.substr(0, comma), "P");
    strategy.interleave = parse_count(rest.substr(comma + 1), "U");
  } else {
    fail(errc::config, "strategy: expected baseline | tp:P | pp:U | combined:P,U, got '" +
                           std::string(text) + "'");
  }
  strategy.validate();
  return strategy;
}

std::string ExecutionStrategy::to_string() const {
  switch (mode) {
    case ExecMode::baseline: return "baseline";
    case ExecMode::task_parallel: return "tp:" + std::to_string(workers);
    case ExecMode::pipeline_parallel: return "pp:" + std::to_string(interleave);
    case ExecMode::combined:
      return "combined:" + std::to_string(workers) + "," + std::to_string(interleave);
  }
  return "?";
}

void ExecutionStrategy::validate() const {
  if (workers == 0 || interleave == 0)
    fail(errc::config, "strategy: P and U must be >= 1");
  switch (mode) {
    case ExecMode::baseline:
      if (workers != 1 || interleave != 1)
        fail(errc::config, "strategy: baseline requires P = 1 and U = 1");
      break;
    case ExecMode::task_parallel:
      if (interleave != 1) fail(errc::config, "strategy: task-parallel requires U = 1");
      break;
    case ExecMode::pipeline_parallel:
      if (workers != 1) fail(errc::config, "strategy: pipeline-parallel requires P = 1");
      break;
    case ExecMode::combined:
      break;
  }
}

std::vector<IndexRange> partition_indices(std::uint64_t paths, unsigned workers) {
  if (workers == 0) fail(errc::config, "partition_indices: need at least one range");
  std::vector<IndexRange> ranges;
  ranges.reserve(workers);
  for (unsigned p = 0; p < workers; ++p) {
    ranges.push_back({paths * p / workers, paths * (p + 1) / workers});
  }
  return ranges;
}

std::vector<WorkItem> interleave_schedule(IndexRange range, unsigned interleave,
                                          std::uint32_t steps) {
  if (interleave == 0) fail(errc::config, "interleave_schedule: U must be >= 1");
  std::vector<WorkItem> order;
  order.reserve(range.size() * steps);
  for (std::uint64_t block = range.begin; block < range.end; block += interleave) {
    const std::uint64_t block_end = std::min<std::uint64_t>(block + interleave, range.end);
    for (std::uint32_t step = 0; step < steps; ++step) {
      for (std::uint64_t path = block; path < block_end; ++path) {
        order.push_back({path, step});
      }
    }
  }
  return order;
}

ReducedSums reduce_deterministic(std::span<const Partial> partials, std::size_t expected_ranges) {
  if (partials.size() != expected_ranges)
    fail(errc::invalid_argument, "reduce: incomplete reduction, expected " +
                                     std::to_string(expected_ranges) + " partials, got " +
                                     std::to_string(partials.size()));
  ExactSum sum;
  ExactSum sum_sq;
  ReducedSums sums;
  for (const Partial& partial : partials) {
    sum.merge(partial.sum);
    sum_sq.merge(partial.sum_sq);
    sums.count += partial.count;
  }
  sums.sum = sum.round();
  sums.sum_sq = sum_sq.round();
  return sums;
}

namespace {

// Walks one range in interleaved blocks; payoffs are folded into the partial
// in ascending path order regardless of the processing order inside a block.
Partial map_range(const payoffs::OptionTask& task, IndexRange range, unsigned interleave,
                  std::uint64_t seed) {
  Partial partial;
  std::vector<sim::PathRunner> in_flight;
  in_flight.reserve(interleave);
  for (std::uint64_t block = range.begin; block < range.end; block += interleave) {
    const std::uint64_t block_end = std::min<std::uint64_t>(block + interleave, range.end);
    in_flight.clear();
    for (std::uint64_t path = block; path < block_end; ++path) {
      in_flight.emplace_back(task, path, seed);
    }
    for (std::uint32_t step = 0; step < task.steps; ++step) {
      for (sim::PathRunner& runner : in_flight) runner.advance(step);
    }
    for (const sim::PathRunner& runner : in_flight) {
      partial.add(payoffs::payoff_value(task.payoff, runner.state(), runner.observation()));
    }
  }
  return partial;
}

} // namespace

RunResult run(const payoffs::OptionTask& task, const ExecutionStrategy& strategy,
              std::uint64_t seed, const metrics::OpCostTable& costs) {
  strategy.validate();
  task.validate();

  const metrics::Stopwatch watch;

  const std::vector<IndexRange> ranges = partition_indices(task.paths, strategy.workers);
  std::vector<Partial> partials(ranges.size());

  if (strategy.workers == 1) {
    partials[0] = map_range(task, ranges[0], strategy.interleave, seed);
  } else {
    std::vector<std::exception_ptr> errors(ranges.size());
    std::vector<std::thread> threads;
    threads.reserve(ranges.size());
    for (std::size_t p = 0; p < ranges.size(); ++p) {
      threads.emplace_back([&, p] {
        try {
          partials[p] = map_range(task, ranges[p], strategy.interleave, seed);
        } catch (...) {
          errors[p] = std::current_exception();
        }
      });
    }
    for (std::thread& thread : threads) thread.join();
    for (const std::exception_ptr& error : errors) {
      if (error) std::rethrow_exception(error);
    }
  }

  const ReducedSums sums = reduce_deterministic(partials, ranges.size());
  const payoffs::Estimate estimate = payoffs::estimate_from_sums(sums.sum, sums.sum_sq, sums.count);
  const double factor =
      payoffs::discount(1.0, task.rate(), task.maturity, task.valuation_time);

  RunResult result;
  result.price = estimate.mean * factor;
  result.std_error = estimate.std_error * factor;
  result.latency_seconds = watch.seconds();
  result.flops = metrics::flop_report(task, costs).total;
  result.strategy = strategy;
  result.seed = seed;
  result.paths = task.paths;
  result.steps = task.steps;
  return result;
}

} // namespace omc::engine
