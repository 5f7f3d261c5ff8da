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
#include <string>
#include <variant>
#include <vector>

#include "core/model.hpp"
#include "core/payoff.hpp"

namespace omc::payoffs {

/// One benchmark pricing task: underlying model, contract, horizon and the
/// requested simulation size.
struct OptionTask {
  std::string designation; // he-eu | he-ba | he-do | he-di | bl-as | custom names
  std::variant<sim::GbmParams, sim::HestonParams> model;
  PayoffSpec payoff;
  double maturity = 1.0;       // T, years
  double valuation_time = 0.0; // t, years, t <= T
  std::uint64_t paths = 1;     // N
  std::uint32_t steps = 0;     // path points per path

  bool heston() const noexcept { return std::holds_alternative<sim::HestonParams>(model); }
  double rate() const noexcept;
  double spot() const noexcept;
  void validate() const;
};

/// Task definitions loaded from a task file: one `[designation]` section per
/// task, `key = value` fields. See data/tasks.txt for the bundled set.
class TaskCatalogue {
public:
  static TaskCatalogue load(const std::string& path);

  const OptionTask* find(const std::string& designation) const noexcept;

  /// Task resolution used by the CLI and the C API: looks up `designation`
  /// and applies size overrides (0 keeps the catalogue value).
  OptionTask resolve(const std::string& designation, std::uint64_t paths_override,
                     std::uint32_t steps_override, bool has_steps_override) const;

  const std::vector<OptionTask>& tasks() const noexcept { return tasks_; }

private:
  std::vector<OptionTask> tasks_; // file order
};

} // namespace omc::payoffs
