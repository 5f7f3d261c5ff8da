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
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <span>
#include <string>

#include <doctest.h>

#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/planner.hpp"
#include "core/task.hpp"

using namespace omc::devicelab;
using omc::payoffs::TaskCatalogue;

namespace {

const std::string kDataDir = OPTIONMC_DATA_DIR;

const Dataset& dataset() {
  static const Dataset d = load_dataset(kDataDir);
  return d;
}

const TaskCatalogue& catalogue() {
  static const TaskCatalogue c = TaskCatalogue::load(kDataDir + "/tasks.txt");
  return c;
}

WorkloadSpec workload_for(std::initializer_list<const char*> tasks, Objective objective) {
  WorkloadSpec workload;
  workload.objective = objective;
  for (const char* name : tasks) workload.tasks.push_back({*catalogue().find(name), 1});
  return workload;
}

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

bool rationale_has(const PartitionPlan& plan, const std::string& needle) {
  return std::any_of(plan.rationale.begin(), plan.rationale.end(),
                     [&](const std::string& line) { return line.find(needle) != std::string::npos; });
}

} // namespace

TEST_CASE("workload files parse") {
  const WorkloadSpec spec =
      load_workload(kDataDir + "/workloads/five-tasks-efficiency.workload", catalogue());
  CHECK(spec.tasks.size() == 5);
  CHECK(spec.objective == Objective::max_efficiency);

  const WorkloadSpec restricted =
      load_workload(kDataDir + "/workloads/c5-tp-only.workload", catalogue());
  CHECK(restricted.platform_allowlist == std::vector<std::string>{"C5-SoC"});
  CHECK(restricted.variant_allowlist == std::vector<Variant>{Variant::tp});

  SUBCASE("repeats") {
    const auto path = write_temp("omc_wl_repeat.workload",
                                 "objective = min-energy\ntask = he-eu x3\ntask = bl-as\n");
    const WorkloadSpec w = load_workload(path.string(), catalogue());
    REQUIRE(w.tasks.size() == 2);
    CHECK(w.tasks[0].repeat == 3);
    CHECK(w.tasks[1].repeat == 1);
  }
  SUBCASE("unknown task is a parse error") {
    const auto path = write_temp("omc_wl_unknown.workload", "task = nope\n");
    CHECK_THROWS_AS(load_workload(path.string(), catalogue()), omc::Error);
  }
  SUBCASE("empty workload is a parse error") {
    const auto path = write_temp("omc_wl_empty.workload", "objective = min-latency\n");
    CHECK_THROWS_AS(load_workload(path.string(), catalogue()), omc::Error);
  }
}

TEST_CASE("profile_workload projects measurements linearly in the path count") {
  WorkloadSpec workload = workload_for({"he-eu"}, Objective::min_latency);
  const WorkloadProfile profile = profile_workload(workload, dataset());
  REQUIRE(profile.tasks.size() == 1);
  const TaskProfile& he_eu = profile.tasks[0];

  CHECK(he_eu.flops_total == doctest::Approx(3.2359e12).epsilon(1e-12));

  auto projection_of = [&](const char* platform) -> const PlatformProjection& {
    for (const PlatformProjection& p : he_eu.platforms)
      if (p.platform == platform) return p;
    REQUIRE(false);
    return he_eu.platforms.front();
  };

  const PlatformProjection& k4000 = projection_of("K4000");
  REQUIRE(k4000.variants.size() == 1);
  CHECK(k4000.variants[0].variant == Variant::tp);
  CHECK(k4000.variants[0].latency_s == doctest::Approx(14.0));
  CHECK(k4000.variants[0].energy_j == doctest::Approx(1700.0));

  SUBCASE("half the paths, half the projections") {
    workload.tasks[0].task.paths = 5'000'000;
    const WorkloadProfile half = profile_workload(workload, dataset());
    const TaskProfile& task = half.tasks[0];
    for (const PlatformProjection& p : task.platforms) {
      if (p.platform != "K4000") continue;
      CHECK(p.variants[0].latency_s == doctest::Approx(7.0));
    }
  }
  SUBCASE("unknown platform in the allowlist") {
    workload.platform_allowlist = {"NoSuchBoard"};
    CHECK_THROWS_AS(profile_workload(workload, dataset()), omc::Error);
  }
  SUBCASE("no measurements anywhere is unprofileable") {
    omc::payoffs::OptionTask custom = *catalogue().find("he-eu");
    custom.designation = "custom-task";
    WorkloadSpec lonely;
    lonely.tasks.push_back({custom, 1});
    try {
      profile_workload(lonely, dataset());
      FAIL("expected an error");
    } catch (const omc::Error& e) {
      CHECK(e.code() == omc::errc::infeasible);
      CHECK(std::string(e.what()).find("unprofileable") != std::string::npos);
    }
  }
}

TEST_CASE("choose_variant follows the objective with fixed tie-breaking") {
  const auto p385_he_eu = dataset().table.rows_for("P385-D5", "he-eu");
  CHECK(choose_variant(p385_he_eu, Objective::min_latency) == Variant::pp); // 20 < 24 < 180
  CHECK(choose_variant(p385_he_eu, Objective::min_energy) == Variant::pp);

  const auto max3_he_eu = dataset().table.rows_for("Max3", "he-eu");
  CHECK(choose_variant(max3_he_eu, Objective::min_latency) == Variant::tp); // 25 < 32 < 212
  CHECK(choose_variant(max3_he_eu, Objective::max_efficiency) == Variant::tp);

  SUBCASE("ties break base < tp < pp") {
    MeasurementRow base{"X", "t", Variant::base, 10.0, 1.0, {}};
    MeasurementRow tp{"X", "t", Variant::tp, 10.0, 1.0, {}};
    MeasurementRow pp{"X", "t", Variant::pp, 10.0, 1.0, {}};
    const MeasurementRow* rows[] = {&base, &tp, &pp};
    CHECK(choose_variant(rows, Objective::min_latency) == Variant::base);
    const MeasurementRow* reversed[] = {&pp, &tp, &base};
    CHECK(choose_variant(reversed, Objective::min_latency) == Variant::base);
  }
  SUBCASE("no rows is an error") {
    CHECK_THROWS_AS(choose_variant(std::span<const MeasurementRow* const>{}, Objective::min_latency),
                    omc::Error);
  }
}

TEST_CASE("assess_fpga ranks platforms under the objective") {
  SUBCASE("min-latency he-eu goes to the GPU") {
    const WorkloadSpec workload = workload_for({"he-eu"}, Objective::min_latency);
    const Assessment assessment = assess_fpga(profile_workload(workload, dataset()), workload);
    REQUIRE(assessment.choices.size() == 1);
    CHECK(assessment.choices[0].platform == "W5000"); // 8 s
    CHECK(assessment.choices[0].metric == doctest::Approx(8.0));
    CHECK_FALSE(assessment.use_fpga);
  }
  SUBCASE("min-energy he-ba goes to the FPGA") {
    const WorkloadSpec workload = workload_for({"he-ba"}, Objective::min_energy);
    const Assessment assessment = assess_fpga(profile_workload(workload, dataset()), workload);
    CHECK(assessment.choices[0].platform == "P385-D5");
    CHECK(assessment.choices[0].variant == Variant::pp); // 1.9 kJ
    CHECK(assessment.use_fpga);
  }
  SUBCASE("max-efficiency over the five tasks ranks P385-D5 first") {
    const WorkloadSpec workload =
        workload_for({"he-eu", "he-ba", "he-do", "he-di", "bl-as"}, Objective::max_efficiency);
    const Assessment assessment = assess_fpga(profile_workload(workload, dataset()), workload);
    REQUIRE_FALSE(assessment.ranking.empty());
    CHECK(assessment.ranking.front().first == "P385-D5");
    CHECK(assessment.use_fpga);
  }
  SUBCASE("constraints can make the workload infeasible") {
    WorkloadSpec workload = workload_for({"he-eu"}, Objective::min_latency);
    workload.max_seconds = 1.0; // nothing prices 10^7 paths in a second
    try {
      assess_fpga(profile_workload(workload, dataset()), workload);
      FAIL("expected an error");
    } catch (const omc::Error& e) {
      CHECK(e.code() == omc::errc::infeasible);
    }
  }
}

TEST_CASE("split_paths is proportional with largest-remainder rounding") {
  const double two_one[] = {2.0, 1.0};
  CHECK(split_paths(9'000'000, two_one) == std::vector<std::uint64_t>{6'000'000, 3'000'000});

  const double lone[] = {3.5};
  CHECK(split_paths(1234, lone) == std::vector<std::uint64_t>{1234});

  const double even[] = {1.0, 1.0, 1.0};
  CHECK(split_paths(10, even) == std::vector<std::uint64_t>{4, 3, 3});

  CHECK_THROWS_AS(split_paths(10, std::span<const double>{}), omc::Error);
  const double bad[] = {1.0, 0.0};
  CHECK_THROWS_AS(split_paths(10, bad), omc::Error);

  SUBCASE("allocations always sum to N") {
    std::mt19937 gen(31);
    std::uniform_real_distribution<double> throughput(0.1, 50.0);
    for (int trial = 0; trial < 300; ++trial) {
      const std::uint64_t paths = gen() % 100'000;
      std::vector<double> throughputs(1 + gen() % 6);
      for (double& t : throughputs) t = throughput(gen);
      const auto allocation = split_paths(paths, throughputs);
      std::uint64_t total = 0;
      for (std::uint64_t a : allocation) total += a;
      CHECK(total == paths);
    }
  }
}

TEST_CASE("split_paths balances finish times within one path quantum") {
  // brute force: minimal possible makespan over every split of N paths
  std::mt19937 gen(41);
  std::uniform_real_distribution<double> throughput(0.5, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t paths = 1 + gen() % 20;
    const double t0 = throughput(gen), t1 = throughput(gen);
    const std::vector<double> throughputs{t0, t1};
    const auto allocation = split_paths(paths, throughputs);

    double best = 1e300;
    for (std::uint64_t a = 0; a <= paths; ++a) {
      best = std::min(best, std::max(a / t0, (paths - a) / t1));
    }
    const double got = std::max(allocation[0] / t0, allocation[1] / t1);
    const double quantum = std::max(1.0 / t0, 1.0 / t1);
    CHECK(got <= best + quantum);
  }
}

TEST_CASE("simulate_heterogeneous replays plans against the measured model") {
  SUBCASE("single device at constant active power") {
    PartitionPlan plan;
    plan.decisions.push_back({"he-eu", 1, {{"P385-D5", Variant::pp, kMeasuredPaths}}});
    const HeterogeneousOutcome outcome = simulate_heterogeneous(plan, dataset());
    CHECK(outcome.makespan_s == doctest::Approx(20.0));
    CHECK(outcome.energy_j == doctest::Approx(1700.0)); // (1.7 kJ / 20 s) * 20 s
  }
  SUBCASE("equal split across equal devices halves the makespan") {
    // synthetic dataset: two identical platforms
    Dataset synthetic;
    synthetic.platforms.push_back({"A", DeviceKind::cpu, "", "", "", "", {}, {}, {}, {}, {}, 0.0, {}});
    synthetic.platforms.push_back({"B", DeviceKind::cpu, "", "", "", "", {}, {}, {}, {}, {}, 0.0, {}});
    synthetic.table.row("A", "t", Variant::base) = {"A", "t", Variant::base, 100.0, 10.0, {}};
    synthetic.table.row("B", "t", Variant::base) = {"B", "t", Variant::base, 100.0, 10.0, {}};

    PartitionPlan plan;
    plan.decisions.push_back({"t",
                              1,
                              {{"A", Variant::base, kMeasuredPaths / 2},
                               {"B", Variant::base, kMeasuredPaths / 2}}});
    const HeterogeneousOutcome outcome = simulate_heterogeneous(plan, synthetic);
    CHECK(outcome.makespan_s == doctest::Approx(50.0));
    CHECK(outcome.energy_j == doctest::Approx(10'000.0)); // both halves still burn the full energy
  }
  SUBCASE("allocation without a measurement is a plan-integrity error") {
    PartitionPlan plan;
    plan.decisions.push_back({"he-eu", 1, {{"C5-SoC", Variant::tp, 1000}}});
    CHECK_THROWS_WITH_AS(simulate_heterogeneous(plan, dataset()),
                         doctest::Contains("plan integrity"), omc::Error);
  }
  SUBCASE("idle power accrues while waiting for the slowest device") {
    Dataset synthetic;
    synthetic.platforms.push_back({"A", DeviceKind::cpu, "", "", "", "", {}, {}, {}, {}, {}, 10.0, {}});
    synthetic.platforms.push_back({"B", DeviceKind::cpu, "", "", "", "", {}, {}, {}, {}, {}, 10.0, {}});
    synthetic.table.row("A", "t", Variant::base) = {"A", "t", Variant::base, 100.0, 10.0, {}};
    synthetic.table.row("B", "t", Variant::base) = {"B", "t", Variant::base, 200.0, 10.0, {}};

    PartitionPlan plan;
    plan.decisions.push_back(
        {"t", 1, {{"A", Variant::base, kMeasuredPaths}, {"B", Variant::base, kMeasuredPaths}}});
    const HeterogeneousOutcome outcome = simulate_heterogeneous(plan, synthetic);
    CHECK(outcome.makespan_s == doctest::Approx(200.0));
    // active: 10 kJ + 10 kJ; idle: device A waits 100 s at 10 W
    CHECK(outcome.energy_j == doctest::Approx(10'000.0 + 10'000.0 + 1000.0));
  }
}

TEST_CASE("plan_workload walks the full decision pipeline") {
  SUBCASE("min-latency he-eu selects the GPU and says so") {
    const WorkloadSpec workload = workload_for({"he-eu"}, Objective::min_latency);
    const PartitionPlan plan = plan_workload(workload, dataset());
    REQUIRE(plan.decisions.size() == 1);
    REQUIRE(plan.decisions[0].allocations.size() == 1);
    CHECK(plan.decisions[0].allocations[0].platform == "W5000");
    CHECK(plan.decisions[0].allocations[0].paths == 10'000'000);
    CHECK(plan.projected_makespan == doctest::Approx(8.0));

    CHECK(rationale_has(plan, "assess: FPGA not selected"));
    for (const char* node : {"receive:", "profile:", "assess:", "execute:", "return:"}) {
      CAPTURE(node);
      CHECK(rationale_has(plan, node));
    }
  }
  SUBCASE("min-energy he-ba selects the FPGA pp variant") {
    const WorkloadSpec workload = workload_for({"he-ba"}, Objective::min_energy);
    const PartitionPlan plan = plan_workload(workload, dataset());
    CHECK(plan.decisions[0].allocations[0].platform == "P385-D5");
    CHECK(plan.decisions[0].allocations[0].variant == Variant::pp);
    CHECK(plan.projected_energy == doctest::Approx(1900.0));
    CHECK(rationale_has(plan, "assess: FPGA selected"));
    CHECK(rationale_has(plan, "check:"));
  }
  SUBCASE("restricting to C5-SoC tp is infeasible") {
    const WorkloadSpec workload =
        load_workload(kDataDir + "/workloads/c5-tp-only.workload", catalogue());
    try {
      plan_workload(workload, dataset());
      FAIL("expected an error");
    } catch (const omc::Error& e) {
      CHECK(e.code() == omc::errc::infeasible);
    }
  }
  SUBCASE("splitting across two devices beats the single best latency") {
    const WorkloadSpec workload = workload_for({"he-eu"}, Objective::min_latency);
    const PartitionPlan plan = plan_workload(workload, dataset(), 2);
    REQUIRE(plan.decisions[0].allocations.size() == 2);
    std::uint64_t total = 0;
    for (const Allocation& a : plan.decisions[0].allocations) total += a.paths;
    CHECK(total == 10'000'000);
    CHECK(plan.projected_makespan < 8.0);
  }
  SUBCASE("repeats scale the projection") {
    WorkloadSpec workload = workload_for({"he-eu"}, Objective::min_latency);
    workload.tasks[0].repeat = 3;
    const PartitionPlan plan = plan_workload(workload, dataset());
    CHECK(plan.projected_makespan == doctest::Approx(24.0)); // 3 x 8 s
  }
}
