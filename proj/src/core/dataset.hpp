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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/metrics.hpp"

namespace omc::devicelab {

/// Simulation size at which the bundled measurements were taken; projections
/// for other path counts scale linearly from here.
inline constexpr std::uint64_t kMeasuredPaths = 10'000'000;
inline constexpr std::uint32_t kMeasuredSteps = 4096;

enum class DeviceKind { fpga, cpu, gpu };

const char* to_string(DeviceKind kind) noexcept;

enum class Variant { base, tp, pp };

const char* to_string(Variant variant) noexcept;
std::optional<Variant> variant_from_string(const std::string& name) noexcept;

struct ResourceFigures {
  std::optional<double> lut, ff, bram, dsp;
};

struct DeviceProfile {
  std::string name;
  DeviceKind kind = DeviceKind::cpu;
  std::string chip;
  std::string vendor;
  std::string standard; // programming standard / toolchain
  std::string comm;     // host link
  std::optional<double> cmos_nm;
  std::optional<double> clock_mhz;
  ResourceFigures resources; // capacities (absolute counts)
  std::optional<double> threads;
  std::optional<double> memory_gb;
  double idle_watts = 0.0;
  std::optional<double> active_watts; // usually backed out of energy/latency
};

/// One (platform, task, variant) cell of the measurement tables.
struct MeasurementRow {
  std::string platform;
  std::string task;
  Variant variant = Variant::base;
  std::optional<double> latency_s;
  std::optional<double> energy_kj;
  std::optional<ResourceFigures> resource_pct; // percentages, 0..100

  bool has_measurement() const noexcept { return latency_s || energy_kj; }
};

class MeasurementTable {
public:
  /// Creates or amends the row for (platform, task, variant).
  MeasurementRow& row(const std::string& platform, const std::string& task, Variant variant);
  const MeasurementRow* find(const std::string& platform, const std::string& task,
                             Variant variant) const noexcept;

  /// Rows for one platform+task, in base < tp < pp order.
  std::vector<const MeasurementRow*> rows_for(const std::string& platform,
                                              const std::string& task) const;

  const std::vector<MeasurementRow>& rows() const noexcept { return rows_; }
  std::vector<std::string> tasks() const; // first-appearance order
  bool empty() const noexcept { return rows_.empty(); }

private:
  std::vector<MeasurementRow> rows_; // insertion order (file order)
};

/// Everything the analysis and partitioning stages consume: platform
/// profiles, the measurement table, reference per-simulation FLOP counts and
/// the operation cost table.
struct Dataset {
  std::vector<DeviceProfile> platforms; // file order
  MeasurementTable table;
  std::map<std::string, double> complexity; // task -> FLOP per simulation
  std::uint32_t complexity_steps = kMeasuredSteps;
  metrics::OpCostTable costs;

  const DeviceProfile* platform(const std::string& name) const noexcept;
};

/// Loads platforms.csv, latency.csv, energy.csv, resources.csv,
/// complexity.csv and flop_costs.txt from `dir`. Absent cells are encoded
/// as `-`; malformed rows are parse errors carrying file and line.
Dataset load_dataset(const std::string& dir);

/// Individual loaders (also used by the tests).
std::vector<DeviceProfile> load_platforms_csv(const std::string& path);
void load_latency_csv(const std::string& path, const std::vector<DeviceProfile>& platforms,
                      MeasurementTable& table);
void load_energy_csv(const std::string& path, const std::vector<DeviceProfile>& platforms,
                     MeasurementTable& table);
void load_resources_csv(const std::string& path, const std::vector<DeviceProfile>& platforms,
                        MeasurementTable& table);
std::map<std::string, double> load_complexity_csv(const std::string& path,
                                                  std::uint32_t& steps_out);

} // namespace omc::devicelab
