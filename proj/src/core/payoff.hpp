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

#include "core/model.hpp"

namespace omc::payoffs {

enum class PayoffKind {
  european_call,
  european_put,
  barrier_knockout,        // knocked out on touching any configured barrier
  double_barrier_knockout, // knocked out on touching either barrier
  digital_double_barrier,  // pays a fixed amount at maturity if never breached
  arithmetic_asian_call,   // call on the arithmetic mean of the monitored prices
};

const char* to_string(PayoffKind kind) noexcept;
std::optional<PayoffKind> payoff_kind_from_string(const std::string& name) noexcept;

struct PayoffSpec {
  PayoffKind kind = PayoffKind::european_call;
  double strike = 0.0;
  std::optional<double> lower_barrier;
  std::optional<double> upper_barrier;
  double digital_amount = 1.0;

  bool strike_bearing() const noexcept;
  bool barrier_monitored() const noexcept;
  bool asian() const noexcept { return kind == PayoffKind::arithmetic_asian_call; }
  void validate() const;
};

/// Running per-path data gathered while the path evolves: the price sum for
/// averaging payoffs and the knock-out flag. `breached` is monotone, it never
/// resets within a path.
struct PathObservation {
  double running_sum = 0.0;
  bool breached = false;
  std::uint32_t count = 0;
};

/// Folds one monitored price into the observation. Asian kinds accumulate the
/// running sum, barrier kinds update the knock-out flag; count always grows.
PathObservation accumulate(PathObservation obs, const PayoffSpec& spec, double s) noexcept;

/// Terminal payoff of one path. Requires the observation to be consistent
/// with the payoff kind (an Asian payoff with no monitored prices is an
/// error). Result is always >= 0.
double payoff_value(const PayoffSpec& spec, const sim::PathState& terminal,
                    const PathObservation& obs);

/// Present value of `value` paid at T, seen from valuation time t <= T.
double discount(double value, double r, double maturity, double valuation_time) noexcept;

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Sample mean and standard error (unbiased sample variance, zero for a
/// single value). Values are summed in index order, matching the engine's
/// deterministic reduction. Empty input is an error.
Estimate estimate(std::span<const double> values);

/// Same estimator expressed over pre-reduced sums, as produced by the
/// engine's reduction.
Estimate estimate_from_sums(double sum, double sum_sq, std::uint64_t n);

/// Standard normal CDF (via erfc; independent of the sampling path).
double normal_cdf(double x) noexcept;

/// Black-Scholes European call value; the validation anchor for the Monte
/// Carlo engine.
double bs_closed_form(const sim::GbmParams& p, double strike, double maturity);

} // namespace omc::payoffs
