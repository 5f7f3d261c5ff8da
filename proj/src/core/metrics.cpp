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
#include "core/metrics.hpp"

#include <fstream>

#include "core/error.hpp"
#include "core/text.hpp"

namespace omc::metrics {

OpCostTable OpCostTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse, "cannot open cost table '" + path + "'");

  OpCostTable costs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string_view::npos)
      fail(errc::parse, path + ":" + std::to_string(line_no) + ": expected 'class = weight'");
    const std::string key{text::trim(t.substr(0, eq))};
    const std::uint64_t value =
        text::parse_u64(t.substr(eq + 1), path + ":" + std::to_string(line_no));
    if (key == "add") costs.add = value;
    else if (key == "mul") costs.mul = value;
    else if (key == "div") costs.div = value;
    else if (key == "compare") costs.compare = value;
    else if (key == "sqrt") costs.sqrt = value;
    else if (key == "exp") costs.exp = value;
    else if (key == "log") costs.log = value;
    else if (key == "inverse_cdf") costs.inverse_cdf = value;
    else fail(errc::config, path + ":" + std::to_string(line_no) + ": unknown operation class '" + key + "'");
  }
  costs.validate();
  return costs;
}

void OpCostTable::validate() const {
  if (compare != 1) fail(errc::config, "cost table: compare/select weight is fixed at 1");
}

namespace {

std::uint64_t model_step_cost(const payoffs::OptionTask& task, const OpCostTable& c) {
  if (!task.heston()) {
    // s' = s * exp(drift + vol*z), drift and vol hoisted per path
    return c.inverse_cdf + 2 * c.mul + c.add + c.exp;
  }
  // correlated shocks: zc = rho*z1 + sqrt(1-rho^2)*z2 (sqrt hoisted)
  const std::uint64_t shocks = 2 * c.inverse_cdf + 2 * c.mul + c.add;
  // variance floor: v+ = max(v, 0)
  const std::uint64_t floor = c.compare;
  // s' = s * exp((r - v+/2)*dt + sqrt(v+*dt)*z1)
  const std::uint64_t price = 5 * c.mul + 2 * c.add + c.sqrt + c.exp;
  // v' = v + kappa*(theta - v+)*dt + xi*sqrt(v+*dt)*zc (sqrt shared with s')
  const std::uint64_t variance = 4 * c.mul + 3 * c.add;
  return shocks + floor + price + variance;
}

std::uint64_t monitor_step_cost(const payoffs::PayoffSpec& payoff, const OpCostTable& c) {
  using payoffs::PayoffKind;
  switch (payoff.kind) {
    case PayoffKind::arithmetic_asian_call:
      return c.add; // running_sum += s
    case PayoffKind::barrier_knockout: {
      // one compare/select per active barrier; the knock-out effect is
      // folded into the monitored flag
      std::uint64_t barriers = 0;
      if (payoff.lower_barrier) ++barriers;
      if (payoff.upper_barrier) ++barriers;
      return barriers * c.compare;
    }
    case PayoffKind::double_barrier_knockout:
    case PayoffKind::digital_double_barrier:
      return 2 * c.compare;
    default:
      return 0;
  }
}

std::uint64_t terminal_cost(const payoffs::PayoffSpec& payoff, const OpCostTable& c) {
  using payoffs::PayoffKind;
  switch (payoff.kind) {
    case PayoffKind::european_call:
    case PayoffKind::european_put:
      return c.add + c.compare; // max(s - K, 0)
    case PayoffKind::barrier_knockout:
    case PayoffKind::double_barrier_knockout:
      // same terminal evaluation as the European payoff; the knock-out is
      // already paid for in the per-step monitoring
      return c.add + c.compare;
    case PayoffKind::digital_double_barrier:
      // the double-barrier kernel plus one select of the fixed amount
      return c.add + c.compare + c.compare;
    case PayoffKind::arithmetic_asian_call:
      return c.div + c.add + c.compare; // max(sum/count - K, 0)
  }
  fail(errc::config, "flops_per_sim: unknown payoff kind");
}

} // namespace

std::uint64_t flops_per_sim(const payoffs::OptionTask& task, const OpCostTable& costs) {
  costs.validate();
  const std::uint64_t per_step = model_step_cost(task, costs) + monitor_step_cost(task.payoff, costs);
  return task.steps * per_step + terminal_cost(task.payoff, costs);
}

FlopReport flop_report(const payoffs::OptionTask& task, const OpCostTable& c) {
  FlopReport report;
  report.path_step = task.steps * (model_step_cost(task, c) + monitor_step_cost(task.payoff, c));
  report.payoff = terminal_cost(task.payoff, c);
  report.per_sim = report.path_step + report.payoff;
  // host-side reduction: sum += v, sum_sq += v*v per path, then mean,
  // variance, standard error and the discount factor
  report.reduce = task.paths * (2 * c.add + c.mul) +
                  (c.div + c.mul + 2 * c.div + c.add + c.sqrt + c.div + c.sqrt) +
                  (c.add + c.mul + c.exp + 2 * c.mul);
  report.total = report.per_sim * task.paths + report.reduce;
  return report;
}

double measure_latency(const std::function<void()>& action) {
  const Stopwatch watch;
  action();
  return watch.seconds();
}

EnergyReport integrate_power(std::span<const PowerSample> trace) {
  if (trace.size() < 2)
    fail(errc::invalid_argument, "integrate_power: need at least two samples");
  double joules = 0.0;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const PowerSample& a = trace[i - 1];
    const PowerSample& b = trace[i];
    if (b.t < a.t) fail(errc::invalid_argument, "integrate_power: timestamps must not decrease");
    if (a.watts < 0.0 || b.watts < 0.0)
      fail(errc::invalid_argument, "integrate_power: negative power sample");
    joules += 0.5 * (a.watts + b.watts) * (b.t - a.t);
  }
  EnergyReport report;
  report.joules = joules;
  report.duration = trace.back().t - trace.front().t;
  report.mean_watts = report.duration > 0.0 ? joules / report.duration : 0.0;
  return report;
}

std::vector<PowerSample> load_power_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse, "cannot open power trace '" + path + "'");
  std::vector<PowerSample> trace;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = text::split(t, ',');
    if (fields.size() != 2)
      fail(errc::parse, path + ":" + std::to_string(line_no) + ": expected 't_seconds,watts'");
    if (line_no == 1 && !fields[0].empty() && !std::isdigit(static_cast<unsigned char>(fields[0][0])) &&
        fields[0][0] != '-' && fields[0][0] != '+' && fields[0][0] != '.') {
      continue; // header row
    }
    const std::string context = path + ":" + std::to_string(line_no);
    trace.push_back({text::parse_double(fields[0], context), text::parse_double(fields[1], context)});
  }
  return trace;
}

double efficiency(double flops, double joules) {
  if (!(joules > 0.0)) fail(errc::invalid_argument, "efficiency: energy must be positive");
  return flops / joules;
}

} // namespace omc::metrics
