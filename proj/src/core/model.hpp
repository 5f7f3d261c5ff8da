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

namespace omc::sim {

/// Geometric Brownian motion: dS = r S dt + sigma S dW.
struct GbmParams {
  double s0 = 100.0;   // spot at t = 0, > 0
  double sigma = 0.2;  // volatility per sqrt-year, >= 0
  double r = 0.0;      // risk-free rate per year

  void validate() const;
};

/// Heston stochastic volatility:
///   dS = r S dt + sqrt(v) S dW1
///   dv = kappa (theta - v) dt + xi sqrt(v) dW2,  corr(dW1, dW2) = rho.
struct HestonParams {
  double s0 = 100.0;
  double v0 = 0.04;    // initial variance per year, >= 0
  double kappa = 1.0;  // mean-reversion rate, per year
  double theta = 0.04; // long-run variance, >= 0
  double xi = 0.0;     // vol of vol, >= 0
  double rho = 0.0;    // shock correlation, in [-1, 1]
  double r = 0.0;

  void validate() const;
};

/// Evolving state of one simulation path. `v` is meaningful for Heston only;
/// it may go negative between steps and is floored at zero before use
/// (full-truncation Euler).
struct PathState {
  double s = 0.0;
  double v = 0.0;
};

/// Exact log-normal GBM update over one step of length dt.
PathState gbm_step(const PathState& state, const GbmParams& p, double z, double dt) noexcept;

/// Full-truncation Euler update (log-Euler on the price) over one step.
/// z1 drives the asset, z2 the variance; the correlated variance shock is
/// rho*z1 + sqrt(1 - rho^2)*z2.
PathState heston_step(const PathState& state, const HestonParams& p, double z1, double z2,
                      double dt) noexcept;

} // namespace omc::sim
