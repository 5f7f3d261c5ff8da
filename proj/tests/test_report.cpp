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
#include <string>

#include <doctest.h>

#include "core/error.hpp"
#include "core/report.hpp"

using namespace omc::devicelab;

namespace {

const std::string kDataDir = OPTIONMC_DATA_DIR;

const Dataset& dataset() {
  static const Dataset d = load_dataset(kDataDir);
  return d;
}

const PlatformSummary& summary_of(const ComparisonReport& report, const std::string& name) {
  for (const PlatformSummary& p : report.platforms)
    if (p.name == name) return p;
  REQUIRE(false);
  return report.platforms.front();
}

} // namespace

TEST_CASE("report aggregates the best variant per task") {
  const ComparisonReport report = build_report(dataset());
  CHECK(report.platforms.size() == 7);
  CHECK(report.tasks == std::vector<std::string>{"he-eu", "he-ba", "he-do", "he-di", "bl-as"});

  const PlatformSummary& k4000 = summary_of(report, "K4000");
  CHECK(std::fabs(k4000.mean_latency_s - 15.2) < 1e-12); // (14+16+17+17+12)/5

  const PlatformSummary& p385 = summary_of(report, "P385-D5");
  CHECK(std::fabs(p385.mean_energy_kj - 1.66) < 1e-12); // pp column: (1.7+1.9+1.9+1.9+0.9)/5
  CHECK(p385.mean_latency_s == doctest::Approx((20.0 + 22.0 + 22.0 + 22.0 + 11.0) / 5));

  const PlatformSummary& max3 = summary_of(report, "Max3");
  CHECK(max3.mean_latency_s == doctest::Approx((25.0 + 25.0 + 24.0 + 25.0 + 12.0) / 5)); // tp
}

TEST_CASE("report efficiency aggregation against an independent recomputation") {
  const ComparisonReport report = build_report(dataset());

  // frozen reference figures: per-sim FLOP and best-variant energies in kJ
  const double flops[] = {323590.0, 327686.0, 331780.0, 331781.0, 147462.0};
  const double p385_pp_kj[] = {1.7, 1.9, 1.9, 1.9, 0.9};
  const double w5000_tp_kj[] = {0.8, 16.1, 9.9, 11.4, 0.6};
  const double k4000_tp_kj[] = {1.7, 2.2, 2.4, 2.4, 1.6};

  auto mean_efficiency = [&](const double* kj) {
    double sum = 0.0;
    for (int i = 0; i < 5; ++i) sum += flops[i] * 1e7 / (kj[i] * 1000.0);
    return sum / 5.0;
  };

  const double p385 = mean_efficiency(p385_pp_kj);
  const double w5000 = mean_efficiency(w5000_tp_kj);
  const double k4000 = mean_efficiency(k4000_tp_kj);

  CHECK(summary_of(report, "P385-D5").mean_flop_per_j == doctest::Approx(p385).epsilon(1e-12));
  CHECK(summary_of(report, "W5000").mean_flop_per_j == doctest::Approx(w5000).epsilon(1e-12));
  CHECK(summary_of(report, "K4000").mean_flop_per_j == doctest::Approx(k4000).epsilon(1e-12));

  // the AMD part edges out the NVIDIA one on this aggregation
  CHECK(w5000 > k4000);
  CHECK(report.best_fpga == "P385-D5");
  CHECK(report.best_gpu == "W5000");
  REQUIRE(report.efficiency_ratio.has_value());
  CHECK(*report.efficiency_ratio == doctest::Approx(p385 / w5000).epsilon(1e-12));
  CHECK(*report.efficiency_ratio >= 1.15);
  CHECK(*report.efficiency_ratio <= 1.45);
}

TEST_CASE("report rendering is deterministic") {
  const ComparisonReport report = build_report(dataset());
  for (ReportFormat format : {ReportFormat::text, ReportFormat::json, ReportFormat::csv}) {
    const std::string once = render_report(report, format);
    const std::string twice = render_report(report, format);
    CHECK(once == twice);
    CHECK_FALSE(once.empty());
  }

  // a reload of the same inputs renders byte-identically
  const Dataset again = load_dataset(kDataDir);
  CHECK(render_report(build_report(again), ReportFormat::text) ==
        render_report(report, ReportFormat::text));

  const std::string text = render_report(report, ReportFormat::text);
  CHECK(text.find("efficiency ratio") != std::string::npos);
  CHECK(text.find("P385-D5") != std::string::npos);

  const std::string csv = render_report(report, ReportFormat::csv);
  CHECK(csv.find("platform,kind,mean_latency_s") == 0);
}

TEST_CASE("plan rendering carries the allocations and the trace") {
  WorkloadSpec workload;
  workload.objective = Objective::min_latency;
  const omc::payoffs::TaskCatalogue catalogue =
      omc::payoffs::TaskCatalogue::load(kDataDir + "/tasks.txt");
  workload.tasks.push_back({*catalogue.find("he-eu"), 1});
  const PartitionPlan plan = plan_workload(workload, dataset());

  const std::string text = render_plan(plan, ReportFormat::text);
  CHECK(text.find("W5000") != std::string::npos);
  CHECK(text.find("assess: FPGA not selected") != std::string::npos);
  CHECK(text.find("projected makespan") != std::string::npos);

  const std::string json = render_plan(plan, ReportFormat::json);
  CHECK(json.find("\"decisions\"") != std::string::npos);
  CHECK(render_plan(plan, ReportFormat::json) == json);

  const std::string csv = render_plan(plan, ReportFormat::csv);
  CHECK(csv.find("task,repeat,platform,variant,paths") == 0);
}

TEST_CASE("report formats parse by name") {
  CHECK(parse_report_format("text") == ReportFormat::text);
  CHECK(parse_report_format("json") == ReportFormat::json);
  CHECK(parse_report_format("csv") == ReportFormat::csv);
  CHECK_THROWS_AS(parse_report_format("xml"), omc::Error);
}

TEST_CASE("empty table is an error") {
  Dataset empty;
  empty.platforms.push_back({"A", DeviceKind::cpu, "", "", "", "", {}, {}, {}, {}, {}, 0.0, {}});
  CHECK_THROWS_AS(build_report(empty), omc::Error);
}
