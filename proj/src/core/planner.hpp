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
#include <vector>

#include "core/dataset.hpp"
#include "core/task.hpp"

namespace omc::devicelab {

enum class Objective { min_latency, min_energy, max_efficiency };

const char* to_string(Objective objective) noexcept;
Objective parse_objective(const std::string& name);

struct WorkloadItem {
  payoffs::OptionTask task;
  unsigned repeat = 1;
};

struct WorkloadSpec {
  std::vector<WorkloadItem> tasks;
  Objective objective = Objective::min_latency;
  std::optional<double> max_seconds;
  std::optional<double> max_joules;
  std::vector<std::string> platform_allowlist; // empty = all platforms
  std::vector<Variant> variant_allowlist;      // empty = all variants
};

/// Workload file: `key = value` header lines (objective, max_seconds,
/// max_joules, platforms, variants) followed by one `task = name [xK]` line
/// per entry. Task names resolve against the catalogue.
WorkloadSpec load_workload(const std::string& path, const payoffs::TaskCatalogue& catalogue);

/// One platform/variant projection for a task, linearly rescaled from the
/// measured path count to the task's.
struct VariantProjection {
  Variant variant = Variant::base;
  std::optional<double> latency_s;
  std::optional<double> energy_j;
};

struct PlatformProjection {
  std::string platform;
  DeviceKind kind = DeviceKind::cpu;
  std::vector<VariantProjection> variants;
};

struct TaskProfile {
  std::string designation;
  std::uint64_t paths = 0;
  unsigned repeat = 1;
  double flops_total = 0.0; // reference complexity figure when available, else the cost model
  std::vector<PlatformProjection> platforms;
};

struct WorkloadProfile {
  std::vector<TaskProfile> tasks;
};

/// Projects every task onto every platform/variant with a measurement,
/// restricted by the workload's allowlists.
WorkloadProfile profile_workload(const WorkloadSpec& workload, const Dataset& dataset);

/// The variant best serving the objective among the given rows; ties break in
/// the fixed order base < tp < pp.
Variant choose_variant(std::span<const MeasurementRow* const> rows, Objective objective);

struct TaskChoice {
  std::string task;
  std::string platform;
  Variant variant = Variant::base;
  double metric = 0.0; // seconds, joules or FLOP/J depending on objective
};

struct Assessment {
  bool use_fpga = false;
  std::vector<TaskChoice> choices;                    // per-task winner
  std::vector<std::pair<std::string, double>> ranking; // platform -> mean metric, best first
};

/// Ranks platforms under the objective and decides whether FPGAs should be
/// employed (an FPGA platform wins at least one task). Constraint violations
/// remove candidates; a task with no remaining candidate is infeasible.
Assessment assess_fpga(const WorkloadProfile& profile, const WorkloadSpec& workload);

/// Splits N paths proportionally to device throughputs with largest-remainder
/// rounding; the allocations always sum to N.
std::vector<std::uint64_t> split_paths(std::uint64_t paths, std::span<const double> throughputs);

struct Allocation {
  std::string platform;
  Variant variant = Variant::base;
  std::uint64_t paths = 0;
};

struct TaskDecision {
  std::string task;
  unsigned repeat = 1;
  std::vector<Allocation> allocations; // sums to the task's path count
};

struct PartitionPlan {
  std::vector<TaskDecision> decisions;
  double projected_makespan = 0.0; // seconds
  double projected_energy = 0.0;   // joules
  std::vector<std::string> rationale; // one line per planning node traversed
};

/// Runs the full planning pipeline: receive -> profile -> assess ->
/// [check availability -> implement] -> execute -> return. Each task goes to
/// its best platform; with split_devices > 1 the top-ranked platforms share
/// the paths proportionally to throughput.
PartitionPlan plan_workload(const WorkloadSpec& workload, const Dataset& dataset,
                            unsigned split_devices = 1);

struct HeterogeneousOutcome {
  double makespan_s = 0.0;
  double energy_j = 0.0;
};

/// Replays a plan against the measured model: per-device busy time from
/// throughput, active power backed out of the measured energy, idle power
/// while waiting for the slowest device.
HeterogeneousOutcome simulate_heterogeneous(const PartitionPlan& plan, const Dataset& dataset);

} // namespace omc::devicelab
