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

// optionmc command line: price | bench | analyze | partition.
//
// Exit codes: 0 success, 2 usage/configuration error, 3 infeasible workload,
// 4 data parse error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "optionmc.h"

namespace {

constexpr std::uint64_t kDefaultSeed = 42;
constexpr std::uint64_t kDeskPaths = 100'000;
constexpr std::int32_t kDeskSteps = 512;
constexpr std::uint64_t kPaperPaths = 10'000'000;
constexpr std::int32_t kPaperSteps = 4096;

struct CatalogueHandle {
  omc_catalogue* ptr = nullptr;
  ~CatalogueHandle() { omc_catalogue_close(ptr); }
};

struct DatasetHandle {
  omc_dataset* ptr = nullptr;
  ~DatasetHandle() { omc_dataset_close(ptr); }
};

int exit_code_of(omc_status status) {
  switch (status) {
    case OMC_OK: return 0;
    case OMC_E_INVALID:
    case OMC_E_CONFIG: return 2;
    case OMC_E_INFEASIBLE: return 3;
    case OMC_E_PARSE: return 4;
    case OMC_E_INTERNAL: return 1;
  }
  return 1;
}

int report_failure(omc_status status, const char* err) {
  std::cerr << "optionmc: " << err << "\n";
  return exit_code_of(status);
}

std::string num(double value, const char* format = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

struct RunOptions {
  std::string task;
  std::string strategy = "baseline";
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t paths = 0; // 0 = apply scale defaults
  std::int32_t steps = -1; // -1 = apply scale defaults
  bool paper_scale = false;
  std::string task_file = OPTIONMC_BUNDLED_TASK_FILE;
  std::string cost_file;
  std::string power_trace;

  omc_run_spec spec() const {
    omc_run_spec spec{};
    spec.task = task.c_str();
    spec.strategy = strategy.c_str();
    spec.seed = seed;
    spec.paths = paths != 0 ? paths : (paper_scale ? kPaperPaths : kDeskPaths);
    spec.steps = steps >= 0 ? steps : (paper_scale ? kPaperSteps : kDeskSteps);
    spec.cost_file = cost_file.empty() ? nullptr : cost_file.c_str();
    spec.power_trace = power_trace.empty() ? nullptr : power_trace.c_str();
    return spec;
  }
};

void add_run_options(CLI::App* cmd, RunOptions& options, bool with_task) {
  if (with_task)
    cmd->add_option("--task", options.task, "task designation from the task file")->required();
  cmd->add_option("--strategy", options.strategy,
                  "baseline | tp:P | pp:U | combined:P,U (default baseline)");
  cmd->add_option("--seed", options.seed, "RNG seed (default 42; runs are deterministic per seed)");
  cmd->add_option("--paths", options.paths, "override the path count");
  cmd->add_option("--steps", options.steps, "override the path points per path");
  cmd->add_flag("--paper-scale", options.paper_scale,
                "run at the canonical 10^7 paths x 4096 steps instead of the desk-scale "
                "default (10^5 x 512)");
  cmd->add_option("--task-file", options.task_file, "task definition file");
  cmd->add_option("--costs", options.cost_file, "FLOP cost table (defaults built in)");
  cmd->add_option("--power-trace", options.power_trace,
                  "power trace file covering the run (t_seconds,watts per line)");
}

std::string csv_energy(double energy_joules) {
  return energy_joules < 0.0 ? "" : num(energy_joules);
}

void print_run_text(const RunOptions& options, const omc_run_result& r) {
  std::cout << "task       " << options.task << "\n"
            << "strategy   " << options.strategy << "\n"
            << "seed       " << options.seed << "\n"
            << "paths      " << r.paths << "\n"
            << "steps      " << r.steps << "\n"
            << "price      " << num(r.price) << "\n"
            << "std_error  " << num(r.std_error) << "\n"
            << "latency_s  " << num(r.latency_seconds, "%.4f") << "\n"
            << "flops      " << r.flops << "\n"
            << "energy_j   " << (r.energy_joules < 0.0 ? "-" : num(r.energy_joules)) << "\n";
}

void print_run_json(const RunOptions& options, const omc_run_result& r) {
  nlohmann::ordered_json doc;
  doc["task"] = options.task;
  doc["strategy"] = options.strategy;
  doc["seed"] = options.seed;
  doc["paths"] = r.paths;
  doc["steps"] = r.steps;
  doc["price"] = r.price;
  doc["std_error"] = r.std_error;
  doc["latency_seconds"] = r.latency_seconds;
  doc["flops"] = r.flops;
  if (r.energy_joules < 0.0)
    doc["energy_joules"] = nullptr;
  else
    doc["energy_joules"] = r.energy_joules;
  std::cout << doc.dump(2) << "\n";
}

const char kRunCsvHeader[] = "task,strategy,repetition,paths,steps,seed,price,std_error,latency_s,flops,energy_j";

void print_run_csv_row(const std::string& task, const std::string& strategy, unsigned repetition,
                       std::uint64_t seed, const omc_run_result& r) {
  std::cout << task << ',' << strategy << ',' << repetition << ',' << r.paths << ',' << r.steps
            << ',' << seed << ',' << num(r.price) << ',' << num(r.std_error) << ','
            << num(r.latency_seconds, "%.4f") << ',' << r.flops << ','
            << csv_energy(r.energy_joules) << '\n';
}

int run_price(const RunOptions& options, const std::string& format) {
  char err[512] = {};
  CatalogueHandle catalogue;
  omc_status status = omc_catalogue_open(options.task_file.c_str(), &catalogue.ptr, err, sizeof err);
  if (status != OMC_OK) return report_failure(status, err);

  const omc_run_spec spec = options.spec();
  omc_run_result result{};
  status = omc_price(catalogue.ptr, &spec, &result, err, sizeof err);
  if (status != OMC_OK) return report_failure(status, err);

  if (format == "text") {
    print_run_text(options, result);
  } else if (format == "json") {
    print_run_json(options, result);
  } else if (format == "csv") {
    std::cout << kRunCsvHeader << '\n';
    print_run_csv_row(options.task, options.strategy, 0, options.seed, result);
  } else {
    std::cerr << "optionmc: unknown format '" << format << "'\n";
    return 2;
  }
  return 0;
}

int run_bench(RunOptions options, const std::vector<std::string>& tasks,
              const std::vector<std::string>& strategies, unsigned repetitions) {
  char err[512] = {};
  CatalogueHandle catalogue;
  omc_status status = omc_catalogue_open(options.task_file.c_str(), &catalogue.ptr, err, sizeof err);
  if (status != OMC_OK) return report_failure(status, err);

  std::cout << kRunCsvHeader << '\n';
  for (const std::string& task : tasks) {
    for (const std::string& strategy : strategies) {
      for (unsigned repetition = 0; repetition < repetitions; ++repetition) {
        options.task = task;
        options.strategy = strategy;
        const omc_run_spec spec = options.spec();
        omc_run_result result{};
        status = omc_price(catalogue.ptr, &spec, &result, err, sizeof err);
        if (status != OMC_OK) return report_failure(status, err);
        print_run_csv_row(task, strategy, repetition, options.seed, result);
      }
    }
  }
  return 0;
}

int run_analyze(const std::string& data_dir, const std::string& format) {
  char err[512] = {};
  DatasetHandle dataset;
  omc_status status = omc_dataset_open(data_dir.c_str(), &dataset.ptr, err, sizeof err);
  if (status != OMC_OK) return report_failure(status, err);

  char* text = nullptr;
  status = omc_analyze(dataset.ptr, format.c_str(), &text, err, sizeof err);
  if (status != OMC_OK) return report_failure(status, err);
  std::cout << text;
  omc_string_free(text);
  return 0;
}

int run_partition(const std::string& workload, const std::string& objective,
                  unsigned split_devices, const std::string& data_dir,
                  const std::string& task_file, const std::string& format) {
  char err[512] = {};
  DatasetHandle dataset;
  omc_status status = omc_dataset_open(data_dir.c_str(), &dataset.ptr, err, sizeof err);
  if (status != OMC_OK) return report_failure(status, err);

  CatalogueHandle catalogue;
  status = omc_catalogue_open(task_file.c_str(), &catalogue.ptr, err, sizeof err);
  if (status != OMC_OK) return report_failure(status, err);

  char* text = nullptr;
  status = omc_partition(dataset.ptr, catalogue.ptr, workload.c_str(),
                         objective.empty() ? nullptr : objective.c_str(), split_devices,
                         format.c_str(), &text, err, sizeof err);
  if (status != OMC_OK) return report_failure(status, err);
  std::cout << text;
  omc_string_free(text);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo option pricing engine and platform analysis"};
  app.require_subcommand(1);

  // price
  RunOptions price_options;
  std::string price_format = "text";
  CLI::App* price = app.add_subcommand("price", "price one task and print the estimate");
  add_run_options(price, price_options, true);
  price->add_option("--format", price_format, "text | json | csv (default text)");

  // bench
  RunOptions bench_options;
  std::vector<std::string> bench_tasks = {"he-eu", "he-ba", "he-do", "he-di", "bl-as"};
  std::vector<std::string> bench_strategies = {"baseline", "tp:4", "pp:4"};
  unsigned repetitions = 1;
  CLI::App* bench = app.add_subcommand("bench", "run a task/strategy sweep and emit CSV rows");
  add_run_options(bench, bench_options, false);
  bench->add_option("--tasks", bench_tasks, "tasks to benchmark")->delimiter(',');
  bench->add_option("--strategies", bench_strategies, "strategies to benchmark")->delimiter(',');
  bench->add_option("--repetitions", repetitions, "repetitions per cell (default 1)");

  // analyze
  std::string analyze_dir = OPTIONMC_BUNDLED_DATA_DIR;
  std::string analyze_format = "text";
  CLI::App* analyze = app.add_subcommand("analyze", "platform comparison from the measured tables");
  analyze->add_option("--data-dir", analyze_dir, "directory with the measurement tables");
  analyze->add_option("--format", analyze_format, "text | json | csv (default text)");

  // partition
  std::string workload_file;
  std::string objective;
  unsigned split_devices = 1;
  std::string partition_dir = OPTIONMC_BUNDLED_DATA_DIR;
  std::string partition_task_file = OPTIONMC_BUNDLED_TASK_FILE;
  std::string partition_format = "text";
  CLI::App* partition = app.add_subcommand("partition", "plan a workload across the platforms");
  partition->add_option("--workload", workload_file, "workload file")->required();
  partition->add_option("--objective", objective,
                        "min-latency | min-energy | max-efficiency (default: workload file)");
  partition->add_option("--split-devices", split_devices,
                        "spread each task over the top K platforms (default 1)");
  partition->add_option("--data-dir", partition_dir, "directory with the measurement tables");
  partition->add_option("--task-file", partition_task_file, "task definition file");
  partition->add_option("--format", partition_format, "text | json | csv (default text)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2; // usage errors are exit code 2
  }

  if (price->parsed()) return run_price(price_options, price_format);
  if (bench->parsed()) return run_bench(bench_options, bench_tasks, bench_strategies, repetitions);
  if (analyze->parsed()) return run_analyze(analyze_dir, analyze_format);
  if (partition->parsed())
    return run_partition(workload_file, objective, split_devices, partition_dir,
                         partition_task_file, partition_format);
  return 2;
}
