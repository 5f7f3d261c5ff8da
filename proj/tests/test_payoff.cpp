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
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "core/error.hpp"
#include "core/path.hpp"
#include "core/payoff.hpp"
#include "core/rng.hpp"

using namespace omc::payoffs;
using omc::sim::PathState;

namespace {

PayoffSpec call_spec(double strike) {
  PayoffSpec spec;
  spec.kind = PayoffKind::european_call;
  spec.strike = strike;
  return spec;
}

PayoffSpec asian_spec(double strike) {
  PayoffSpec spec;
  spec.kind = PayoffKind::arithmetic_asian_call;
  spec.strike = strike;
  return spec;
}

PayoffSpec double_barrier_spec(double lo, double hi, double strike = 100.0) {
  PayoffSpec spec;
  spec.kind = PayoffKind::double_barrier_knockout;
  spec.strike = strike;
  spec.lower_barrier = lo;
  spec.upper_barrier = hi;
  return spec;
}

// Black-Scholes call by quadrature over the lognormal terminal density,
// integrating the smooth part from the exercise boundary upward (Simpson).
double bs_by_integration(double s0, double strike, double sigma, double r, double maturity) {
  const double drift = (r - 0.5 * sigma * sigma) * maturity;
  const double vol = sigma * std::sqrt(maturity);
  const double z_star = (std::log(strike / s0) - drift) / vol; // payoff kink
  const double z_hi = z_star + 14.0;
  const int n = 200'000; // even
  const double h = (z_hi - z_star) / n;
  auto integrand = [&](double z) {
    const double terminal = s0 * std::exp(drift + vol * z);
    const double density = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
    return (terminal - strike) * density;
  };
  double sum = integrand(z_star) + integrand(z_hi);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * integrand(z_star + i * h);
  return std::exp(-r * maturity) * sum * h / 3.0;
}

} // namespace

TEST_CASE("accumulate: asian kinds add the price to the running sum") {
  PathObservation obs;
  obs.running_sum = 100.0;
  obs = accumulate(obs, asian_spec(100.0), 110.0);
  CHECK(obs.running_sum == 210.0);
  CHECK(obs.count == 1);
  CHECK_FALSE(obs.breached);
}

TEST_CASE("accumulate: barrier breach on touching") {
  const PayoffSpec spec = double_barrier_spec(80.0, 120.0);
  PathObservation obs;
  obs = accumulate(obs, spec, 121.0);
  CHECK(obs.breached);

  SUBCASE("breach is monotone") {
    obs = accumulate(obs, spec, 100.0);
    CHECK(obs.breached);
  }
  SUBCASE("touching counts as a breach") {
    PathObservation touch;
    touch = accumulate(touch, spec, 120.0);
    CHECK(touch.breached);
    PathObservation low;
    low = accumulate(low, spec, 80.0);
    CHECK(low.breached);
  }
  SUBCASE("inside the corridor nothing breaches") {
    PathObservation inside;
    inside = accumulate(inside, spec, 100.0);
    CHECK_FALSE(inside.breached);
    CHECK(inside.count == 1);
  }
}

TEST_CASE("payoff values per kind") {
  const PathState terminal{120.0, 0.0};
  PathObservation clean;
  clean.count = 4;

  CHECK(payoff_value(call_spec(100.0), terminal, clean) == 20.0);

  PayoffSpec put;
  put.kind = PayoffKind::european_put;
  put.strike = 100.0;
  CHECK(payoff_value(put, terminal, clean) == 0.0);
  CHECK(payoff_value(put, {80.0, 0.0}, clean) == 20.0);

  PathObservation breached = clean;
  breached.breached = true;
  CHECK(payoff_value(double_barrier_spec(80.0, 130.0), terminal, breached) == 0.0);
  CHECK(payoff_value(double_barrier_spec(80.0, 130.0), terminal, clean) == 20.0);

  PayoffSpec digital;
  digital.kind = PayoffKind::digital_double_barrier;
  digital.lower_barrier = 80.0;
  digital.upper_barrier = 130.0;
  digital.digital_amount = 1.0;
  CHECK(payoff_value(digital, terminal, clean) == 1.0);
  CHECK(payoff_value(digital, terminal, breached) == 0.0);

  PathObservation averaged;
  averaged.running_sum = 440.0;
  averaged.count = 4;
  CHECK(payoff_value(asian_spec(100.0), terminal, averaged) == 10.0);
}

TEST_CASE("asian payoff over an empty observation is an error") {
  CHECK_THROWS_AS(payoff_value(asian_spec(100.0), {100.0, 0.0}, {}), omc::Error);
}

TEST_CASE("payoff is never negative") {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> price(1.0, 300.0);
  for (int i = 0; i < 2000; ++i) {
    const PathState terminal{price(gen), 0.0};
    PathObservation obs;
    obs.running_sum = price(gen) * 4;
    obs.count = 4;
    obs.breached = (i % 3 == 0);
    for (const PayoffSpec& spec :
         {call_spec(100.0), asian_spec(100.0), double_barrier_spec(50.0, 250.0)}) {
      CHECK(payoff_value(spec, terminal, obs) >= 0.0);
    }
  }
}

TEST_CASE("discount factor") {
  CHECK(discount(10.0, 0.0, 1.0, 0.0) == 10.0);
  CHECK(discount(10.0, 0.07, 2.0, 2.0) == 10.0);
  CHECK(discount(10.0, 0.05, 1.0, 0.0) == doctest::Approx(9.51229).epsilon(1e-6));
}

TEST_CASE("discount is linear") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> value(0.0, 50.0);
  for (int i = 0; i < 100; ++i) {
    const double v = value(gen);
    const double a = 3.25;
    CHECK(discount(a * v, 0.04, 2.0, 0.5) ==
          doctest::Approx(a * discount(v, 0.04, 2.0, 0.5)).epsilon(1e-14));
  }
}

TEST_CASE("estimate: mean and standard error") {
  const std::vector<double> odd{2.0, 4.0, 6.0};
  const Estimate e1 = estimate(odd);
  CHECK(e1.mean == 4.0);
  CHECK(e1.std_error == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));

  const std::vector<double> flat{5.0, 5.0, 5.0, 5.0};
  const Estimate e2 = estimate(flat);
  CHECK(e2.mean == 5.0);
  CHECK(e2.std_error == 0.0);

  const std::vector<double> one{7.5};
  CHECK(estimate(one).std_error == 0.0);

  CHECK_THROWS_AS(estimate(std::vector<double>{}), omc::Error);
}

TEST_CASE("estimate covers a known Bernoulli expectation within 3 standard errors") {
  // payoff 5 with probability 0.3: expectation 1.5 by direct enumeration
  const double expectation = 0.3 * 5.0;
  std::vector<double> values;
  values.reserve(10'000);
  for (std::uint64_t i = 0; i < 10'000; ++i) {
    values.push_back(omc::sim::uniform({88, i, 0, 0}) < 0.3 ? 5.0 : 0.0);
  }
  const Estimate e = estimate(values);
  CHECK(std::fabs(e.mean - expectation) <= 3.0 * e.std_error);
}

TEST_CASE("closed form: a zero-strike call is the asset") {
  CHECK(bs_closed_form({100.0, 0.2, 0.05}, 0.0, 1.0) == 100.0);
}

TEST_CASE("closed form: zero volatility is the discounted forward") {
  CHECK(bs_closed_form({100.0, 0.0, 0.05}, 90.0, 1.0) ==
        doctest::Approx(100.0 - 90.0 * std::exp(-0.05)).epsilon(1e-14));
  CHECK(bs_closed_form({100.0, 0.0, 0.0}, 120.0, 1.0) == 0.0);
}

TEST_CASE("closed form agrees with the quadrature oracle") {
  const double reference = bs_by_integration(100.0, 100.0, 0.2, 0.05, 1.0);
  const double value = bs_closed_form({100.0, 0.2, 0.05}, 100.0, 1.0);
  CHECK(std::fabs(value - reference) < 1e-6);
  CHECK(std::fabs(value - 10.4506) < 1e-3);

  // a few more corners against the oracle
  struct Corner {
    double s0, k, sigma, r, t;
  };
  for (const Corner& c : {Corner{100.0, 80.0, 0.3, 0.02, 0.5}, Corner{50.0, 60.0, 0.45, 0.0, 2.0},
                          Corner{100.0, 140.0, 0.15, 0.07, 1.5}}) {
    CHECK(bs_closed_form({c.s0, c.sigma, c.r}, c.k, c.t) ==
          doctest::Approx(bs_by_integration(c.s0, c.k, c.sigma, c.r, c.t)).epsilon(1e-7));
  }
}

TEST_CASE("put-call consistency at zero volatility") {
  // both sides deterministic: call - put = s0 - K e^(-rT)
  const double r = 0.04, maturity = 2.0;
  for (double strike : {80.0, 100.0, 125.0}) {
    const double call = bs_closed_form({100.0, 0.0, r}, strike, maturity);
    PayoffSpec put;
    put.kind = PayoffKind::european_put;
    put.strike = strike;
    const double forward = 100.0 * std::exp(r * maturity);
    const double put_value =
        discount(std::max(strike - forward, 0.0), r, maturity, 0.0);
    CHECK(call - put_value ==
          doctest::Approx(100.0 - strike * std::exp(-r * maturity)).epsilon(1e-12));
  }
}

TEST_CASE("knock-out dominance on identical paths") {
  omc::payoffs::OptionTask task;
  task.designation = "dom";
  task.model = omc::sim::GbmParams{100.0, 0.35, 0.03};
  task.payoff = call_spec(100.0);
  task.maturity = 1.0;
  task.paths = 1;
  task.steps = 32;

  PayoffSpec vanilla = call_spec(100.0);
  PayoffSpec single; // up-and-out
  single.kind = PayoffKind::barrier_knockout;
  single.strike = 100.0;
  single.upper_barrier = 135.0;
  PayoffSpec both = double_barrier_spec(75.0, 135.0);

  double v_sum = 0.0, s_sum = 0.0, d_sum = 0.0;
  for (std::uint64_t path = 0; path < 500; ++path) {
    auto run = [&](const PayoffSpec& spec) {
      omc::payoffs::OptionTask t = task;
      t.payoff = spec;
      const auto result = omc::sim::simulate_path(t, path, 4);
      return payoff_value(spec, result.terminal, result.observation);
    };
    const double v = run(vanilla);
    const double s = run(single);
    const double d = run(both);
    CHECK(d <= s);
    CHECK(s <= v);
    v_sum += v;
    s_sum += s;
    d_sum += d;
  }
  CHECK(d_sum <= s_sum);
  CHECK(s_sum <= v_sum);
}

TEST_CASE("widening the barriers never decreases a path payoff") {
  omc::payoffs::OptionTask task;
  task.designation = "widen";
  task.model = omc::sim::GbmParams{100.0, 0.4, 0.0};
  task.payoff = double_barrier_spec(85.0, 115.0);
  task.maturity = 1.0;
  task.paths = 1;
  task.steps = 16;

  for (std::uint64_t path = 0; path < 300; ++path) {
    auto value_with = [&](double lo, double hi) {
      omc::payoffs::OptionTask t = task;
      t.payoff = double_barrier_spec(lo, hi);
      const auto result = omc::sim::simulate_path(t, path, 21);
      return payoff_value(t.payoff, result.terminal, result.observation);
    };
    CHECK(value_with(85.0, 115.0) <= value_with(75.0, 125.0));
    CHECK(value_with(75.0, 125.0) <= value_with(60.0, 160.0));
  }
}

TEST_CASE("digital estimate is bounded by the discounted amount") {
  omc::payoffs::OptionTask task;
  task.designation = "digital";
  task.model = omc::sim::GbmParams{100.0, 0.25, 0.05};
  PayoffSpec digital;
  digital.kind = PayoffKind::digital_double_barrier;
  digital.lower_barrier = 70.0;
  digital.upper_barrier = 140.0;
  digital.digital_amount = 2.5;
  task.payoff = digital;
  task.maturity = 1.0;
  task.paths = 1;
  task.steps = 16;

  std::vector<double> values;
  for (std::uint64_t path = 0; path < 2000; ++path) {
    const auto result = omc::sim::simulate_path(task, path, 6);
    values.push_back(payoff_value(task.payoff, result.terminal, result.observation));
  }
  const Estimate e = estimate(values);
  const double bound = 2.5 * std::exp(-0.05);
  const double priced = discount(e.mean, 0.05, 1.0, 0.0);
  CHECK(priced >= 0.0);
  CHECK(priced <= bound);
}

TEST_CASE("payoff spec validation") {
  CHECK_THROWS_AS(call_spec(0.0).validate(), omc::Error);
  CHECK_THROWS_AS(double_barrier_spec(120.0, 80.0).validate(), omc::Error);

  PayoffSpec no_barrier;
  no_barrier.kind = PayoffKind::barrier_knockout;
  no_barrier.strike = 100.0;
  CHECK_THROWS_AS(no_barrier.validate(), omc::Error);

  PayoffSpec half;
  half.kind = PayoffKind::digital_double_barrier;
  half.lower_barrier = 80.0;
  CHECK_THROWS_AS(half.validate(), omc::Error);

  CHECK_NOTHROW(double_barrier_spec(80.0, 120.0).validate());
}
