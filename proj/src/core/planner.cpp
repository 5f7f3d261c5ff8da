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
#include "core/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>

#include "core/error.hpp"
#include "core/text.hpp"

namespace omc::devicelab {

const char* to_string(Objective objective) noexcept {
  switch (objective) {
    case Objective::min_latency: return "min-latency";
    case Objective::min_energy: return "min-energy";
    case Objective::max_efficiency: return "max-efficiency";
  }
  return "?";
}

Objective parse_objective(const std::string& name) {
  if (name == "min-latency") return Objective::min_latency;
  if (name == "min-energy") return Objective::min_energy;
  if (name == "max-efficiency") return Objective::max_efficiency;
  fail(errc::config, "unknown objective '" + name + "'");
}

WorkloadSpec load_workload(const std::string& path, const payoffs::TaskCatalogue& catalogue) {
  std::ifstream in(path);
  if (!in) fail(errc::parse, "cannot open workload file '" + path + "'");

  WorkloadSpec workload;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::string where = path + ":" + std::to_string(line_no);

    const std::size_t eq = t.find('=');
    if (eq == std::string_view::npos) fail(errc::parse, where + ": expected 'key = value'");
    const std::string key{text::trim(t.substr(0, eq))};
    const std::string value{text::trim(t.substr(eq + 1))};

    if (key == "objective") {
      try {
        workload.objective = parse_objective(value);
      } catch (const Error& e) {
        fail(errc::parse, where + ": " + e.what());
      }
    } else if (key == "max_seconds") {
      workload.max_seconds = text::parse_double(value, where);
    } else if (key == "max_joules") {
      workload.max_joules = text::parse_double(value, where);
    } else if (key == "platforms") {
      for (const auto name : text::split(value, ','))
        workload.platform_allowlist.emplace_back(name);
    } else if (key == "variants") {
      for (const auto name : text::split(value, ',')) {
        const auto variant = variant_from_string(std::string(name));
        if (!variant) fail(errc::parse, where + ": unknown variant '" + std::string(name) + "'");
        workload.variant_allowlist.push_back(*variant);
      }
    } else if (key == "task") {
      // `task = he-eu` or `task = he-eu x3`
      std::string name = value;
      unsigned repeat = 1;
      if (const std::size_t sp = value.rfind(" x"); sp != std::string::npos) {
        repeat = static_cast<unsigned>(text::parse_u64(value.substr(sp + 2), where));
        if (repeat == 0) fail(errc::parse, where + ": repeat count must be >= 1");
        name = std::string(text::trim(value.substr(0, sp)));
      }
      const payoffs::OptionTask* task = catalogue.find(name);
      if (!task) fail(errc::parse, where + ": unknown task '" + name + "'");
      workload.tasks.push_back({*task, repeat});
    } else {
      fail(errc::parse, where + ": unknown key '" + key + "'");
    }
  }
  if (workload.tasks.empty()) fail(errc::parse, path + ": workload names no tasks");
  return workload;
}

namespace {

bool variant_allowed(const WorkloadSpec& workload, Variant variant) {
  return workload.variant_allowlist.empty() ||
         std::find(workload.variant_allowlist.begin(), workload.variant_allowlist.end(), variant) !=
             workload.variant_allowlist.end();
}

bool platform_allowed(const WorkloadSpec& workload, const std::string& name) {
  return workload.platform_allowlist.empty() ||
         std::find(workload.platform_allowlist.begin(), workload.platform_allowlist.end(), name) !=
             workload.platform_allowlist.end();
}

double scale_for(const payoffs::OptionTask& task) {
  return static_cast<double>(task.paths) / static_cast<double>(kMeasuredPaths);
}

std::string format_seconds(double s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", s);
  return buf;
}

} // namespace

WorkloadProfile profile_workload(const WorkloadSpec& workload, const Dataset& dataset) {
  for (const std::string& name : workload.platform_allowlist) {
    if (!dataset.platform(name)) fail(errc::config, "workload names unknown platform '" + name + "'");
  }

  WorkloadProfile profile;
  for (const WorkloadItem& item : workload.tasks) {
    TaskProfile task_profile;
    task_profile.designation = item.task.designation;
    task_profile.paths = item.task.paths;
    task_profile.repeat = item.repeat;

    const auto reference = dataset.complexity.find(item.task.designation);
    if (reference != dataset.complexity.end() && item.task.steps == dataset.complexity_steps) {
      task_profile.flops_total = reference->second * static_cast<double>(item.task.paths);
    } else {
      task_profile.flops_total =
          static_cast<double>(metrics::flops_per_sim(item.task, dataset.costs)) *
          static_cast<double>(item.task.paths);
    }

    const double scale = scale_for(item.task);
    for (const DeviceProfile& platform : dataset.platforms) {
      if (!platform_allowed(workload, platform.name)) continue;
      PlatformProjection projection;
      projection.platform = platform.name;
      projection.kind = platform.kind;
      for (Variant variant : {Variant::base, Variant::tp, Variant::pp}) {
        if (!variant_allowed(workload, variant)) continue;
        const MeasurementRow* row = dataset.table.find(platform.name, item.task.designation, variant);
        if (!row || !row->has_measurement()) continue;
        VariantProjection vp;
        vp.variant = variant;
        if (row->latency_s) vp.latency_s = *row->latency_s * scale;
        if (row->energy_kj) vp.energy_j = *row->energy_kj * 1000.0 * scale;
        projection.variants.push_back(vp);
      }
      if (!projection.variants.empty()) task_profile.platforms.push_back(std::move(projection));
    }

    if (task_profile.platforms.empty())
      fail(errc::infeasible,
           "unprofileable task '" + item.task.designation + "': no measurements available");
    profile.tasks.push_back(std::move(task_profile));
  }
  return profile;
}

Variant choose_variant(std::span<const MeasurementRow* const> rows, Objective objective) {
  if (rows.empty()) fail(errc::invalid_argument, "choose_variant: no measurement rows");
  const bool by_latency = objective == Objective::min_latency;

  std::optional<Variant> best;
  double best_metric = 0.0;
  // base < tp < pp keeps ties deterministic
  for (Variant variant : {Variant::base, Variant::tp, Variant::pp}) {
    for (const MeasurementRow* row : rows) {
      if (row->variant != variant) continue;
      const std::optional<double>& metric = by_latency ? row->latency_s : row->energy_kj;
      if (!metric) continue;
      if (!best || *metric < best_metric) {
        best = variant;
        best_metric = *metric;
      }
    }
  }
  if (!best)
    fail(errc::config, std::string("choose_variant: no row carries ") +
                           (by_latency ? "latency" : "energy") + " data");
  return *best;
}

namespace {

struct Candidate {
  const PlatformProjection* projection = nullptr;
  Variant variant = Variant::base;
  double metric = 0.0;         // objective metric, lower is better (efficiency negated)
  double latency_s = 0.0;      // of the chosen variant
  double energy_j = 0.0;
};

// Best variant of one platform under the objective, as a ranked candidate.
std::optional<Candidate> best_variant(const PlatformProjection& projection,
                                      const TaskProfile& task, Objective objective) {
  const bool by_latency = objective == Objective::min_latency;
  std::optional<Candidate> best;
  for (const VariantProjection& vp : projection.variants) {
    const std::optional<double>& metric = by_latency ? vp.latency_s : vp.energy_j;
    if (!metric) continue;
    if (!best || *metric < best->metric) {
      Candidate candidate;
      candidate.projection = &projection;
      candidate.variant = vp.variant;
      candidate.metric = *metric;
      candidate.latency_s = vp.latency_s.value_or(0.0);
      candidate.energy_j = vp.energy_j.value_or(0.0);
      best = candidate;
    }
  }
  if (best && objective == Objective::max_efficiency) {
    // rank by FLOP/J; keep "lower is better" by negating
    best->metric = -(task.flops_total / best->energy_j);
  }
  return best;
}

std::vector<Candidate> feasible_candidates(const TaskProfile& task, const WorkloadSpec& workload) {
  std::vector<Candidate> candidates;
  for (const PlatformProjection& projection : task.platforms) {
    auto candidate = best_variant(projection, task, workload.objective);
    if (!candidate) continue;
    if (workload.max_seconds && candidate->latency_s > *workload.max_seconds) continue;
    if (workload.max_joules && candidate->energy_j > *workload.max_joules) continue;
    candidates.push_back(*candidate);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.metric < b.metric; });
  return candidates;
}

double objective_value(const Candidate& candidate, Objective objective) {
  return objective == Objective::max_efficiency ? -candidate.metric : candidate.metric;
}

} // namespace

Assessment assess_fpga(const WorkloadProfile& profile, const WorkloadSpec& workload) {
  if (profile.tasks.empty()) fail(errc::invalid_argument, "assess_fpga: empty profile");

  Assessment assessment;
  std::map<std::string, std::pair<double, int>> aggregate; // platform -> (metric sum, tasks)

  for (const TaskProfile& task : profile.tasks) {
    const std::vector<Candidate> candidates = feasible_candidates(task, workload);
    if (candidates.empty()) {
      std::string reason = "no platform can serve task '" + task.designation + "'";
      if (workload.max_seconds) reason += " within max_seconds";
      if (workload.max_joules) reason += (workload.max_seconds ? "/max_joules" : " within max_joules");
      if (!workload.platform_allowlist.empty() || !workload.variant_allowlist.empty())
        reason += " under the platform/variant restrictions";
      fail(errc::infeasible, reason);
    }
    const Candidate& winner = candidates.front();
    assessment.choices.push_back({task.designation, winner.projection->platform, winner.variant,
                                  objective_value(winner, workload.objective)});
    if (winner.projection->kind == DeviceKind::fpga) assessment.use_fpga = true;
    for (const Candidate& candidate : candidates) {
      auto& slot = aggregate[candidate.projection->platform];
      slot.first += objective_value(candidate, workload.objective);
      slot.second += 1;
    }
  }

  for (const auto& [platform, slot] : aggregate) {
    assessment.ranking.emplace_back(platform, slot.first / slot.second);
  }
  const bool descending = workload.objective == Objective::max_efficiency;
  std::stable_sort(assessment.ranking.begin(), assessment.ranking.end(),
                   [descending](const auto& a, const auto& b) {
                     return descending ? a.second > b.second : a.second < b.second;
                   });
  return assessment;
}

std::vector<std::uint64_t> split_paths(std::uint64_t paths, std::span<const double> throughputs) {
  if (throughputs.empty()) fail(errc::config, "split_paths: no devices");
  double total = 0.0;
  for (double t : throughputs) {
    if (!(t > 0.0)) fail(errc::invalid_argument, "split_paths: throughputs must be > 0");
    total += t;
  }

  std::vector<std::uint64_t> allocation(throughputs.size());
  std::vector<std::pair<double, std::size_t>> remainders; // (-remainder, index) for stable order
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < throughputs.size(); ++i) {
    const double share = static_cast<double>(paths) * (throughputs[i] / total);
    const double base = std::floor(share);
    allocation[i] = static_cast<std::uint64_t>(base);
    assigned += allocation[i];
    remainders.emplace_back(-(share - base), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::uint64_t leftover = paths - assigned;
  for (std::size_t i = 0; leftover > 0; i = (i + 1) % remainders.size(), --leftover) {
    allocation[remainders[i].second] += 1;
  }
  return allocation;
}

PartitionPlan plan_workload(const WorkloadSpec& workload, const Dataset& dataset,
                            unsigned split_devices) {
  if (split_devices == 0) fail(errc::config, "plan: split_devices must be >= 1");

  PartitionPlan plan;
  {
    std::string line = "receive: " + std::to_string(workload.tasks.size()) + " task(s), objective " +
                       to_string(workload.objective);
    if (workload.max_seconds) line += ", max_seconds " + format_seconds(*workload.max_seconds);
    if (workload.max_joules) line += ", max_joules " + format_seconds(*workload.max_joules);
    if (!workload.platform_allowlist.empty()) {
      line += ", platforms";
      for (const std::string& p : workload.platform_allowlist) line += " " + p;
    }
    plan.rationale.push_back(line);
  }

  const WorkloadProfile profile = profile_workload(workload, dataset);
  {
    std::string line = "profile:";
    for (const TaskProfile& task : profile.tasks) {
      line += " " + task.designation + "=" + format_seconds(task.flops_total) + " FLOP";
    }
    plan.rationale.push_back(line);
  }

  const Assessment assessment = assess_fpga(profile, workload);
  if (assessment.use_fpga) {
    std::string line = "assess: FPGA selected for";
    for (const TaskChoice& choice : assessment.choices) {
      if (dataset.platform(choice.platform)->kind == DeviceKind::fpga)
        line += " " + choice.task;
    }
    plan.rationale.push_back(line);

    // check implementation availability on the FPGA platforms in play
    std::vector<std::string> missing;
    for (const TaskProfile& task : profile.tasks) {
      for (const DeviceProfile& platform : dataset.platforms) {
        if (platform.kind != DeviceKind::fpga) continue;
        if (!workload.platform_allowlist.empty() &&
            std::find(workload.platform_allowlist.begin(), workload.platform_allowlist.end(),
                      platform.name) == workload.platform_allowlist.end())
          continue;
        const bool present = std::any_of(
            task.platforms.begin(), task.platforms.end(),
            [&](const PlatformProjection& p) { return p.platform == platform.name; });
        if (!present) missing.push_back(platform.name + "/" + task.designation);
      }
    }
    plan.rationale.push_back("check: FPGA implementation availability");
    for (const std::string& entry : missing) {
      plan.rationale.push_back("implement: " + entry + " implementation unavailable: excluded");
    }
  } else {
    std::string line = "assess: FPGA not selected (best platform ";
    line += assessment.choices.front().platform;
    line += "), executing on CPU/GPU";
    plan.rationale.push_back(line);
  }

  for (const TaskProfile& task : profile.tasks) {
    const std::vector<Candidate> candidates = feasible_candidates(task, workload);
    const unsigned device_count =
        std::min<unsigned>(split_devices, static_cast<unsigned>(candidates.size()));

    TaskDecision decision;
    decision.task = task.designation;
    decision.repeat = task.repeat;

    std::vector<double> throughputs;
    std::vector<const Candidate*> chosen;
    for (unsigned i = 0; i < device_count; ++i) {
      const Candidate& candidate = candidates[i];
      if (!(candidate.latency_s > 0.0)) continue; // throughput needs a latency figure
      chosen.push_back(&candidate);
      // measured latency scaled back to paths/second of the chosen variant
      throughputs.push_back(static_cast<double>(task.paths) / candidate.latency_s);
    }
    if (chosen.empty())
      fail(errc::infeasible, "task '" + task.designation + "' has no platform with latency data");

    const std::vector<std::uint64_t> shares = split_paths(task.paths, throughputs);
    std::string line = "execute: " + task.designation + " ->";
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      if (shares[i] == 0) continue;
      decision.allocations.push_back(
          {chosen[i]->projection->platform, chosen[i]->variant, shares[i]});
      line += " " + chosen[i]->projection->platform + "/" +
              to_string(chosen[i]->variant) + ":" + std::to_string(shares[i]);
    }
    plan.rationale.push_back(line);
    plan.decisions.push_back(std::move(decision));
  }

  const HeterogeneousOutcome outcome = simulate_heterogeneous(plan, dataset);
  plan.projected_makespan = outcome.makespan_s;
  plan.projected_energy = outcome.energy_j;
  plan.rationale.push_back("return: projected makespan " + format_seconds(outcome.makespan_s) +
                           " s, energy " + format_seconds(outcome.energy_j) + " J");
  return plan;
}

HeterogeneousOutcome simulate_heterogeneous(const PartitionPlan& plan, const Dataset& dataset) {
  std::map<std::string, double> busy; // platform -> seconds
  double active_energy = 0.0;

  for (const TaskDecision& decision : plan.decisions) {
    for (const Allocation& allocation : decision.allocations) {
      const MeasurementRow* row =
          dataset.table.find(allocation.platform, decision.task, allocation.variant);
      if (!row || !row->latency_s || !row->energy_kj)
        fail(errc::config, "plan integrity: no usable measurement for " + allocation.platform +
                               "/" + decision.task + "/" + to_string(allocation.variant));
      const double fraction =
          static_cast<double>(allocation.paths) / static_cast<double>(kMeasuredPaths);
      busy[allocation.platform] += decision.repeat * *row->latency_s * fraction;
      active_energy += decision.repeat * *row->energy_kj * 1000.0 * fraction;
    }
  }
  if (busy.empty()) fail(errc::invalid_argument, "plan integrity: empty plan");

  double makespan = 0.0;
  for (const auto& [platform, seconds] : busy) makespan = std::max(makespan, seconds);

  double idle_energy = 0.0;
  for (const auto& [platform, seconds] : busy) {
    const DeviceProfile* profile = dataset.platform(platform);
    if (!profile) fail(errc::config, "plan integrity: unknown platform '" + platform + "'");
    idle_energy += profile->idle_watts * (makespan - seconds);
  }
  return {makespan, active_energy + idle_energy};
}

} // namespace omc::devicelab
