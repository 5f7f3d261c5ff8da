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
#include "optionmc.h"

#include <cstring>
#include <memory>
#include <string>

#include "core/dataset.hpp"
#include "core/engine.hpp"
#include "core/error.hpp"
#include "core/metrics.hpp"
#include "core/planner.hpp"
#include "core/report.hpp"
#include "core/task.hpp"

struct omc_catalogue {
  omc::payoffs::TaskCatalogue catalogue;
};

struct omc_dataset {
  omc::devicelab::Dataset dataset;
};

namespace {

void write_error(char* err, size_t err_cap, const char* message) {
  if (!err || err_cap == 0) return;
  std::strncpy(err, message, err_cap - 1);
  err[err_cap - 1] = '\0';
}

omc_status status_of(omc::errc code) {
  switch (code) {
    case omc::errc::invalid_argument: return OMC_E_INVALID;
    case omc::errc::config: return OMC_E_CONFIG;
    case omc::errc::parse: return OMC_E_PARSE;
    case omc::errc::infeasible: return OMC_E_INFEASIBLE;
  }
  return OMC_E_INTERNAL;
}

template <typename Fn>
omc_status guarded(char* err, size_t err_cap, Fn&& fn) {
  try {
    fn();
    return OMC_OK;
  } catch (const omc::Error& e) {
    write_error(err, err_cap, e.what());
    return status_of(e.code());
  } catch (const std::exception& e) {
    write_error(err, err_cap, e.what());
    return OMC_E_INTERNAL;
  } catch (...) {
    write_error(err, err_cap, "unknown error");
    return OMC_E_INTERNAL;
  }
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

} // namespace

extern "C" {

const char* omc_status_name(omc_status status) {
  switch (status) {
    case OMC_OK: return "ok";
    case OMC_E_INVALID: return "invalid argument";
    case OMC_E_CONFIG: return "configuration error";
    case OMC_E_PARSE: return "parse error";
    case OMC_E_INFEASIBLE: return "infeasible workload";
    case OMC_E_INTERNAL: return "internal error";
  }
  return "?";
}

const char* omc_version(void) { return "0.1.0"; }

omc_status omc_catalogue_open(const char* task_file, omc_catalogue** out, char* err,
                              size_t err_cap) {
  if (!task_file || !out) {
    write_error(err, err_cap, "catalogue_open: null argument");
    return OMC_E_INVALID;
  }
  *out = nullptr;
  return guarded(err, err_cap, [&] {
    auto handle = std::make_unique<omc_catalogue>();
    handle->catalogue = omc::payoffs::TaskCatalogue::load(task_file);
    *out = handle.release();
  });
}

void omc_catalogue_close(omc_catalogue* catalogue) { delete catalogue; }

int omc_catalogue_count(const omc_catalogue* catalogue) {
  return catalogue ? static_cast<int>(catalogue->catalogue.tasks().size()) : 0;
}

const char* omc_catalogue_name(const omc_catalogue* catalogue, int index) {
  if (!catalogue || index < 0 ||
      index >= static_cast<int>(catalogue->catalogue.tasks().size()))
    return nullptr;
  return catalogue->catalogue.tasks()[static_cast<std::size_t>(index)].designation.c_str();
}

omc_status omc_price(const omc_catalogue* catalogue, const omc_run_spec* spec,
                     omc_run_result* result, char* err, size_t err_cap) {
  if (!catalogue || !spec || !result || !spec->task || !spec->strategy) {
    write_error(err, err_cap, "price: null argument");
    return OMC_E_INVALID;
  }
  return guarded(err, err_cap, [&] {
    const bool has_steps = spec->steps >= 0;
    const omc::payoffs::OptionTask task = catalogue->catalogue.resolve(
        spec->task, spec->paths, has_steps ? static_cast<std::uint32_t>(spec->steps) : 0,
        has_steps);
    const auto strategy = omc::engine::ExecutionStrategy::parse(spec->strategy);
    omc::metrics::OpCostTable costs;
    if (spec->cost_file) costs = omc::metrics::OpCostTable::load(spec->cost_file);

    omc::engine::RunResult run = omc::engine::run(task, strategy, spec->seed, costs);
    if (spec->power_trace) {
      const auto trace = omc::metrics::load_power_trace(spec->power_trace);
      run.energy_joules = omc::metrics::integrate_power(trace).joules;
    }

    result->price = run.price;
    result->std_error = run.std_error;
    result->latency_seconds = run.latency_seconds;
    result->flops = run.flops;
    result->energy_joules = run.energy_joules.value_or(-1.0);
    result->paths = run.paths;
    result->steps = run.steps;
  });
}

omc_status omc_dataset_open(const char* data_dir, omc_dataset** out, char* err, size_t err_cap) {
  if (!data_dir || !out) {
    write_error(err, err_cap, "dataset_open: null argument");
    return OMC_E_INVALID;
  }
  *out = nullptr;
  return guarded(err, err_cap, [&] {
    auto handle = std::make_unique<omc_dataset>();
    handle->dataset = omc::devicelab::load_dataset(data_dir);
    *out = handle.release();
  });
}

void omc_dataset_close(omc_dataset* dataset) { delete dataset; }

omc_status omc_analyze(const omc_dataset* dataset, const char* format, char** out, char* err,
                       size_t err_cap) {
  if (!dataset || !format || !out) {
    write_error(err, err_cap, "analyze: null argument");
    return OMC_E_INVALID;
  }
  *out = nullptr;
  return guarded(err, err_cap, [&] {
    const auto report = omc::devicelab::build_report(dataset->dataset);
    *out = copy_string(
        omc::devicelab::render_report(report, omc::devicelab::parse_report_format(format)));
  });
}

omc_status omc_partition(const omc_dataset* dataset, const omc_catalogue* catalogue,
                         const char* workload_file, const char* objective,
                         unsigned split_devices, const char* format, char** out, char* err,
                         size_t err_cap) {
  if (!dataset || !catalogue || !workload_file || !format || !out) {
    write_error(err, err_cap, "partition: null argument");
    return OMC_E_INVALID;
  }
  *out = nullptr;
  return guarded(err, err_cap, [&] {
    omc::devicelab::WorkloadSpec workload =
        omc::devicelab::load_workload(workload_file, catalogue->catalogue);
    if (objective && *objective) workload.objective = omc::devicelab::parse_objective(objective);
    const auto plan =
        omc::devicelab::plan_workload(workload, dataset->dataset, split_devices);
    *out = copy_string(
        omc::devicelab::render_plan(plan, omc::devicelab::parse_report_format(format)));
  });
}

void omc_string_free(char* text) { delete[] text; }

} // extern "C"
