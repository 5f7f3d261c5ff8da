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
#include "core/model.hpp"

#include <cmath>

#include "core/error.hpp"

namespace omc::sim {

void GbmParams::validate() const {
  if (!(s0 > 0.0)) fail(errc::invalid_argument, "gbm: s0 must be > 0");
  if (!(sigma >= 0.0)) fail(errc::invalid_argument, "gbm: sigma must be >= 0");
  if (!std::isfinite(s0) || !std::isfinite(sigma) || !std::isfinite(r))
    fail(errc::invalid_argument, "gbm: parameters must be finite");
}

void HestonParams::validate() const {
  if (!(s0 > 0.0)) fail(errc::invalid_argument, "heston: s0 must be > 0");
  if (!(v0 >= 0.0)) fail(errc::invalid_argument, "heston: v0 must be >= 0");
  if (!(theta >= 0.0)) fail(errc::invalid_argument, "heston: theta must be >= 0");
  if (!(xi >= 0.0)) fail(errc::invalid_argument, "heston: xi must be >= 0");
  if (!(rho >= -1.0 && rho <= 1.0)) fail(errc::invalid_argument, "heston: rho must be in [-1, 1]");
  if (!std::isfinite(s0) || !std::isfinite(v0) || !std::isfinite(kappa) || !std::isfinite(theta) ||
      !std::isfinite(xi) || !std::isfinite(rho) || !std::isfinite(r))
    fail(errc::invalid_argument, "heston: parameters must be finite");
}

PathState gbm_step(const PathState& state, const GbmParams& p, double z, double dt) noexcept {
  const double drift = (p.r - 0.5 * p.sigma * p.sigma) * dt;
  const double diffusion = p.sigma * std::sqrt(dt) * z;
  return {state.s * std::exp(drift + diffusion), state.v};
}

PathState heston_step(const PathState& state, const HestonParams& p, double z1, double z2,
                      double dt) noexcept {
  const double v_plus = state.v > 0.0 ? state.v : 0.0;
  const double vol_dt = std::sqrt(v_plus * dt);

  const double s_next = state.s * std::exp((p.r - 0.5 * v_plus) * dt + vol_dt * z1);

  const double zc = p.rho * z1 + std::sqrt(1.0 - p.rho * p.rho) * z2;
  const double v_next = state.v + p.kappa * (p.theta - v_plus) * dt + p.xi * vol_dt * zc;

  return {s_next, v_next};
}

} // namespace omc::sim
