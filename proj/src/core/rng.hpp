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

namespace omc::sim {

/// Address of one random draw. Every draw in a simulation is produced by a
/// pure function of its key, so results cannot depend on the order in which
/// paths are scheduled or partitioned across workers.
struct RngKey {
  std::uint64_t global_seed = 0;
  std::uint64_t path_id = 0;
  std::uint32_t step = 0;
  std::uint8_t dim = 0; // 0 = asset shock, 1 = variance shock
};

/// 64 uniform bits for the key (Philox-4x32-10). Distinct keys never alias:
/// the key tuple maps injectively onto the counter/key block.
std::uint64_t random_bits(const RngKey& key) noexcept;

/// Uniform draw in [0, 1) with 53-bit resolution.
double uniform(const RngKey& key) noexcept;

/// Standard normal deviate: inverse normal CDF applied to uniform(key).
double gaussian(const RngKey& key) noexcept;

/// Inverse of the standard normal CDF (Wichura's PPND16 rational
/// approximation, accurate to full double precision). Requires 0 < p < 1.
double inverse_normal_cdf(double p) noexcept;

} // namespace omc::sim
