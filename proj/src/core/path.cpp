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
#include "core/path.hpp"

#include "core/rng.hpp"

namespace omc::sim {

PathRunner::PathRunner(const payoffs::OptionTask& task, std::uint64_t path_id,
                       std::uint64_t global_seed) noexcept
    : task_(&task), path_id_(path_id), seed_(global_seed) {
  if (const auto* p = std::get_if<GbmParams>(&task.model)) {
    gbm_ = p;
    state_ = {p->s0, 0.0};
  } else {
    heston_ = &std::get<HestonParams>(task.model);
    state_ = {heston_->s0, heston_->v0};
  }
  dt_ = task.steps > 0 ? task.maturity / static_cast<double>(task.steps) : 0.0;
}

void PathRunner::advance(std::uint32_t step) noexcept {
  const double z1 = gaussian({seed_, path_id_, step, 0});
  if (gbm_) {
    state_ = gbm_step(state_, *gbm_, z1, dt_);
  } else {
    const double z2 = gaussian({seed_, path_id_, step, 1});
    state_ = heston_step(state_, *heston_, z1, z2, dt_);
  }
  observation_ = payoffs::accumulate(observation_, task_->payoff, state_.s);
}

PathResult simulate_path(const payoffs::OptionTask& task, std::uint64_t path_id,
                         std::uint64_t global_seed) noexcept {
  PathRunner runner(task, path_id, global_seed);
  for (std::uint32_t step = 0; step < task.steps; ++step) runner.advance(step);
  return {runner.state(), runner.observation()};
}

} // namespace omc::sim
