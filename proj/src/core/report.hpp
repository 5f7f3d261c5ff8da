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

#include <optional>
#include <string>
#include <vector>

#include "core/planner.hpp"

namespace omc::devicelab {

/// Per-platform aggregate over the benchmark tasks, best variant per task:
/// latency under min-latency, energy/power/efficiency under min-energy.
struct PlatformSummary {
  std::string name;
  DeviceKind kind = DeviceKind::cpu;
  double mean_latency_s = 0.0;
  double mean_power_w = 0.0;
  double mean_energy_kj = 0.0;
  double mean_flop_per_j = 0.0;
};

struct ComparisonReport {
  std::vector<std::string> tasks;         // aggregation order
  std::vector<PlatformSummary> platforms; // dataset platform order
  std::string best_fpga;                  // highest mean FLOP/J of its kind
  std::string best_gpu;
  std::optional<double> efficiency_ratio; // best FPGA / best GPU
};

/// Aggregates the measurement table into the platform comparison. Tasks
/// without a reference per-simulation FLOP figure are left out of the
/// aggregation.
ComparisonReport build_report(const Dataset& dataset);

enum class ReportFormat { text, json, csv };

ReportFormat parse_report_format(const std::string& name);

/// Deterministic renderings: identical inputs produce byte-identical output.
std::string render_report(const ComparisonReport& report, ReportFormat format);
std::string render_plan(const PartitionPlan& plan, ReportFormat format);

} // namespace omc::devicelab
