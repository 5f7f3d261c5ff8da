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

#include "core/task.hpp"

namespace omc::sim {

/// Advances one simulation path step by step on the uniform grid
/// dt = maturity / steps, feeding every post-step price to the payoff
/// accumulator. All strategies drive paths through this one code path, so a
/// path's arithmetic is identical no matter how it is scheduled.
class PathRunner {
public:
  PathRunner(const payoffs::OptionTask& task, std::uint64_t path_id,
             std::uint64_t global_seed) noexcept;

  /// One grid step; `step` is the 0-based index addressing the RNG draws.
  void advance(std::uint32_t step) noexcept;

  const PathState& state() const noexcept { return state_; }
  const payoffs::PathObservation& observation() const noexcept { return observation_; }

private:
  const payoffs::OptionTask* task_;
  const GbmParams* gbm_ = nullptr;
  const HestonParams* heston_ = nullptr;
  std::uint64_t path_id_;
  std::uint64_t seed_;
  double dt_;
  PathState state_;
  payoffs::PathObservation observation_;
};

struct PathResult {
  PathState terminal;
  payoffs::PathObservation observation;
};

/// Runs the whole path. Pure function of (task, path_id, global_seed);
/// repeated evaluation is bit-identical.
PathResult simulate_path(const payoffs::OptionTask& task, std::uint64_t path_id,
                         std::uint64_t global_seed) noexcept;

} // namespace omc::sim
