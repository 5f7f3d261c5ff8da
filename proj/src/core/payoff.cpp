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
#include "core/payoff.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/exact_sum.hpp"

namespace omc::payoffs {

const char* to_string(PayoffKind kind) noexcept {
  switch (kind) {
    case PayoffKind::european_call: return "european-call";
    case PayoffKind::european_put: return "european-put";
    case PayoffKind::barrier_knockout: return "barrier-knockout";
    case PayoffKind::double_barrier_knockout: return "double-barrier-knockout";
    case PayoffKind::digital_double_barrier: return "digital-double-barrier";
    case PayoffKind::arithmetic_asian_call: return "arithmetic-asian-call";
  }
  return "?";
}

std::optional<PayoffKind> payoff_kind_from_string(const std::string& name) noexcept {
  for (PayoffKind kind :
       {PayoffKind::european_call, PayoffKind::european_put, PayoffKind::barrier_knockout,
        PayoffKind::double_barrier_knockout, PayoffKind::digital_double_barrier,
        PayoffKind::arithmetic_asian_call}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

bool PayoffSpec::strike_bearing() const noexcept {
  return kind != PayoffKind::digital_double_barrier;
}

bool PayoffSpec::barrier_monitored() const noexcept {
  return kind == PayoffKind::barrier_knockout || kind == PayoffKind::double_barrier_knockout ||
         kind == PayoffKind::digital_double_barrier;
}

void PayoffSpec::validate() const {
  if (strike_bearing() && !(strike > 0.0))
    fail(errc::invalid_argument, "payoff: strike must be > 0");
  if (kind == PayoffKind::barrier_knockout && !lower_barrier && !upper_barrier)
    fail(errc::invalid_argument, "payoff: barrier-knockout needs at least one barrier");
  if ((kind == PayoffKind::double_barrier_knockout ||
       kind == PayoffKind::digital_double_barrier) &&
      !(lower_barrier && upper_barrier))
    fail(errc::invalid_argument, "payoff: double-barrier kinds need both barriers");
  if (lower_barrier && upper_barrier && !(*lower_barrier < *upper_barrier))
    fail(errc::invalid_argument, "payoff: lower barrier must be below upper barrier");
  if (kind == PayoffKind::digital_double_barrier && !(digital_amount >= 0.0))
    fail(errc::invalid_argument, "payoff: digital amount must be >= 0");
}

PathObservation accumulate(PathObservation obs, const PayoffSpec& spec, double s) noexcept {
  if (spec.asian()) obs.running_sum += s;
  if (spec.barrier_monitored()) {
    // Knock-out on touching: breach is monotone, never reset.
    if (spec.lower_barrier && s <= *spec.lower_barrier) obs.breached = true;
    if (spec.upper_barrier && s >= *spec.upper_barrier) obs.breached = true;
  }
  obs.count += 1;
  return obs;
}

double payoff_value(const PayoffSpec& spec, const sim::PathState& terminal,
                    const PathObservation& obs) {
  switch (spec.kind) {
    case PayoffKind::european_call:
      return std::max(terminal.s - spec.strike, 0.0);
    case PayoffKind::european_put:
      return std::max(spec.strike - terminal.s, 0.0);
    case PayoffKind::barrier_knockout:
    case PayoffKind::double_barrier_knockout:
      return obs.breached ? 0.0 : std::max(terminal.s - spec.strike, 0.0);
    case PayoffKind::digital_double_barrier:
      return obs.breached ? 0.0 : spec.digital_amount;
    case PayoffKind::arithmetic_asian_call:
      if (obs.count == 0)
        fail(errc::invalid_argument, "payoff: asian payoff over an empty observation");
      return std::max(obs.running_sum / obs.count - spec.strike, 0.0);
  }
  fail(errc::invalid_argument, "payoff: unknown kind");
}

double discount(double value, double r, double maturity, double valuation_time) noexcept {
  return value * std::exp(-r * (maturity - valuation_time));
}

Estimate estimate(std::span<const double> values) {
  if (values.empty()) fail(errc::invalid_argument, "estimate: empty sample");
  ExactSum sum;
  ExactSum sum_sq;
  for (double v : values) {
    sum.add(v);
    sum_sq.add(v * v);
  }
  return estimate_from_sums(sum.round(), sum_sq.round(), values.size());
}

Estimate estimate_from_sums(double sum, double sum_sq, std::uint64_t n) {
  if (n == 0) fail(errc::invalid_argument, "estimate: empty sample");
  const double mean = sum / static_cast<double>(n);
  if (n == 1) return {mean, 0.0};
  const double nf = static_cast<double>(n);
  double variance = (sum_sq - sum * sum / nf) / (nf - 1.0);
  if (variance < 0.0) variance = 0.0; // cancellation on constant samples
  return {mean, std::sqrt(variance / nf)};
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double bs_closed_form(const sim::GbmParams& p, double strike, double maturity) {
  p.validate();
  if (!(maturity > 0.0)) fail(errc::invalid_argument, "bs_closed_form: maturity must be > 0");
  if (strike < 0.0) fail(errc::invalid_argument, "bs_closed_form: strike must be >= 0");

  if (strike == 0.0) return p.s0; // a zero-strike call is the asset
  if (p.sigma == 0.0) return std::max(p.s0 - strike * std::exp(-p.r * maturity), 0.0);

  const double vol_sqrt_t = p.sigma * std::sqrt(maturity);
  const double d1 =
      (std::log(p.s0 / strike) + (p.r + 0.5 * p.sigma * p.sigma) * maturity) / vol_sqrt_t;
  const double d2 = d1 - vol_sqrt_t;
  return p.s0 * normal_cdf(d1) - strike * std::exp(-p.r * maturity) * normal_cdf(d2);
}

} // namespace omc::payoffs
