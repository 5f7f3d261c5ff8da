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

#include <chrono>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "core/task.hpp"

namespace omc::metrics {

/// FLOP weight per operation class. The defaults are a calibration choice
/// and can be replaced from a cost file; the compare/select weight is pinned
/// at 1 so that per-step payoff deltas between task kinds stay structural.
struct OpCostTable {
  std::uint64_t add = 1; // additions and subtractions
  std::uint64_t mul = 1;
  std::uint64_t div = 1;
  std::uint64_t compare = 1; // compares and selects, fixed at 1
  std::uint64_t sqrt = 1;
  std::uint64_t exp = 8;
  std::uint64_t log = 8;
  std::uint64_t inverse_cdf = 20; // one Gaussian draw, uniform bits included

  /// `key = value` pairs, one class per line, '#' comments. Unknown keys are
  /// configuration errors.
  static OpCostTable load(const std::string& path);
  void validate() const;
};

/// Static FLOP count of one simulation path: steps x (model step + payoff
/// monitoring) + terminal payoff, evaluated against the cost table.
std::uint64_t flops_per_sim(const payoffs::OptionTask& task, const OpCostTable& costs);

struct FlopReport {
  std::uint64_t per_sim = 0;
  std::uint64_t path_step = 0; // per simulation, per-step share
  std::uint64_t payoff = 0;    // per simulation, terminal share
  std::uint64_t reduce = 0;    // whole-run reduction share
  std::uint64_t total = 0;     // per_sim * paths + reduce
};

FlopReport flop_report(const payoffs::OptionTask& task, const OpCostTable& costs);

/// Wall-clock interval on the monotonic clock.
class Stopwatch {
public:
  Stopwatch() : start_(clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_;
};

/// Elapsed wall-clock seconds of one action.
double measure_latency(const std::function<void()>& action);

struct PowerSample {
  double t = 0.0;     // seconds since run start, non-decreasing
  double watts = 0.0; // instantaneous total system power, >= 0
};

struct EnergyReport {
  double joules = 0.0;
  double mean_watts = 0.0; // joules / duration (0 for a zero-length trace)
  double duration = 0.0;   // seconds
};

/// Trapezoidal integration of a power trace. Needs at least two samples with
/// non-decreasing timestamps.
EnergyReport integrate_power(std::span<const PowerSample> trace);

/// Power trace file: one `t_seconds,watts` sample per line, optional header.
std::vector<PowerSample> load_power_trace(const std::string& path);

/// FLOPs per joule. Joules must be positive.
double efficiency(double flops, double joules);

} // namespace omc::metrics
