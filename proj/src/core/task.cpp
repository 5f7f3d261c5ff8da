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
#include "core/task.hpp"

#include <fstream>
#include <map>

#include "core/error.hpp"
#include "core/text.hpp"

namespace omc::payoffs {

double OptionTask::rate() const noexcept {
  return heston() ? std::get<sim::HestonParams>(model).r : std::get<sim::GbmParams>(model).r;
}

double OptionTask::spot() const noexcept {
  return heston() ? std::get<sim::HestonParams>(model).s0 : std::get<sim::GbmParams>(model).s0;
}

void OptionTask::validate() const {
  if (designation.empty()) fail(errc::invalid_argument, "task: designation must not be empty");
  std::visit([](const auto& m) { m.validate(); }, model);
  payoff.validate();
  if (!(maturity > 0.0)) fail(errc::invalid_argument, "task: maturity must be > 0");
  if (!(valuation_time >= 0.0 && valuation_time <= maturity))
    fail(errc::invalid_argument, "task: valuation time must be in [0, maturity]");
  if (paths < 1) fail(errc::invalid_argument, "task: paths must be >= 1");
}

namespace {

OptionTask build_task(const std::string& name, const std::map<std::string, std::string>& fields,
                      const std::string& file) {
  auto context = [&](const std::string& key) { return file + ": [" + name + "] " + key; };
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = fields.find(key);
    return it == fields.end() ? nullptr : &it->second;
  };
  auto require = [&](const std::string& key) -> const std::string& {
    const std::string* v = get(key);
    if (!v) fail(errc::parse, context(key) + " is required");
    return *v;
  };
  auto number = [&](const std::string& key) { return text::parse_double(require(key), context(key)); };
  auto number_or = [&](const std::string& key, double fallback) {
    const std::string* v = get(key);
    return v ? text::parse_double(*v, context(key)) : fallback;
  };

  OptionTask task;
  task.designation = name;

  const std::string& model = require("model");
  if (model == "gbm") {
    sim::GbmParams p;
    p.s0 = number("s0");
    p.sigma = number("sigma");
    p.r = number_or("r", 0.0);
    task.model = p;
  } else if (model == "heston") {
    sim::HestonParams p;
    p.s0 = number("s0");
    p.v0 = number("v0");
    p.kappa = number("kappa");
    p.theta = number("theta");
    p.xi = number("xi");
    p.rho = number("rho");
    p.r = number_or("r", 0.0);
    task.model = p;
  } else {
    fail(errc::parse, context("model") + " must be 'gbm' or 'heston'");
  }

  const std::string& payoff = require("payoff");
  const auto kind = payoff_kind_from_string(payoff);
  if (!kind) fail(errc::parse, context("payoff") + ": unknown payoff kind '" + payoff + "'");
  task.payoff.kind = *kind;
  if (task.payoff.strike_bearing()) task.payoff.strike = number("strike");
  if (const std::string* v = get("lower_barrier"))
    task.payoff.lower_barrier = text::parse_double(*v, context("lower_barrier"));
  if (const std::string* v = get("upper_barrier"))
    task.payoff.upper_barrier = text::parse_double(*v, context("upper_barrier"));
  task.payoff.digital_amount = number_or("digital_amount", 1.0);

  task.maturity = number_or("maturity", 1.0);
  task.valuation_time = number_or("valuation_time", 0.0);
  task.paths = text::parse_u64(require("paths"), context("paths"));
  task.steps = static_cast<std::uint32_t>(text::parse_u64(require("steps"), context("steps")));

  try {
    task.validate();
  } catch (const Error& e) {
    fail(errc::parse, file + ": [" + name + "]: " + e.what());
  }
  return task;
}

} // namespace

TaskCatalogue TaskCatalogue::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse, "cannot open task file '" + path + "'");

  TaskCatalogue catalogue;
  std::string section;
  std::map<std::string, std::string> fields;
  auto flush = [&]() {
    if (section.empty()) return;
    catalogue.tasks_.push_back(build_task(section, fields, path));
    fields.clear();
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        fail(errc::parse, path + ":" + std::to_string(line_no) + ": unterminated section header");
      flush();
      section = std::string(text::trim(t.substr(1, t.size() - 2)));
      if (section.empty())
        fail(errc::parse, path + ":" + std::to_string(line_no) + ": empty task name");
      if (catalogue.find(section))
        fail(errc::parse, path + ":" + std::to_string(line_no) + ": duplicate task '" + section + "'");
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string_view::npos || section.empty())
      fail(errc::parse, path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    fields[std::string(text::trim(t.substr(0, eq)))] = std::string(text::trim(t.substr(eq + 1)));
  }
  flush();

  if (catalogue.tasks_.empty()) fail(errc::parse, path + ": no tasks defined");
  return catalogue;
}

const OptionTask* TaskCatalogue::find(const std::string& designation) const noexcept {
  for (const OptionTask& task : tasks_) {
    if (task.designation == designation) return &task;
  }
  return nullptr;
}

OptionTask TaskCatalogue::resolve(const std::string& designation, std::uint64_t paths_override,
                                  std::uint32_t steps_override, bool has_steps_override) const {
  const OptionTask* base = find(designation);
  if (!base) fail(errc::config, "unknown task '" + designation + "'");
  OptionTask task = *base;
  if (paths_override > 0) task.paths = paths_override;
  if (has_steps_override) task.steps = steps_override;
  task.validate();
  return task;
}

} // namespace omc::payoffs
