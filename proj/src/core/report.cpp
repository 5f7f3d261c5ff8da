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
#include "core/report.hpp"

#include <cstdio>

#include <json.hpp>

#include "core/error.hpp"

namespace omc::devicelab {

namespace {

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

} // namespace

ComparisonReport build_report(const Dataset& dataset) {
  if (dataset.table.empty()) fail(errc::invalid_argument, "report: empty measurement table");

  ComparisonReport report;
  for (const std::string& task : dataset.table.tasks()) {
    if (dataset.complexity.count(task)) report.tasks.push_back(task);
  }
  if (report.tasks.empty())
    fail(errc::invalid_argument, "report: no task with a reference FLOP figure");

  for (const DeviceProfile& platform : dataset.platforms) {
    double latency_sum = 0.0, power_sum = 0.0, energy_sum = 0.0, efficiency_sum = 0.0;
    int covered = 0;
    for (const std::string& task : report.tasks) {
      const auto rows = dataset.table.rows_for(platform.name, task);
      if (rows.empty()) continue;

      const Variant fastest = choose_variant(rows, Objective::min_latency);
      const Variant frugal = choose_variant(rows, Objective::min_energy);
      const MeasurementRow* fastest_row = dataset.table.find(platform.name, task, fastest);
      const MeasurementRow* frugal_row = dataset.table.find(platform.name, task, frugal);
      if (!fastest_row->latency_s || !frugal_row->energy_kj || !frugal_row->latency_s) continue;

      const double energy_j = *frugal_row->energy_kj * 1000.0;
      latency_sum += *fastest_row->latency_s;
      power_sum += energy_j / *frugal_row->latency_s;
      energy_sum += *frugal_row->energy_kj;
      efficiency_sum += dataset.complexity.at(task) * static_cast<double>(kMeasuredPaths) / energy_j;
      ++covered;
    }
    if (covered == 0) continue;

    PlatformSummary summary;
    summary.name = platform.name;
    summary.kind = platform.kind;
    summary.mean_latency_s = latency_sum / covered;
    summary.mean_power_w = power_sum / covered;
    summary.mean_energy_kj = energy_sum / covered;
    summary.mean_flop_per_j = efficiency_sum / covered;
    report.platforms.push_back(summary);
  }
  if (report.platforms.empty()) fail(errc::invalid_argument, "report: no platform has usable rows");

  const PlatformSummary* best_fpga = nullptr;
  const PlatformSummary* best_gpu = nullptr;
  for (const PlatformSummary& summary : report.platforms) {
    if (summary.kind == DeviceKind::fpga &&
        (!best_fpga || summary.mean_flop_per_j > best_fpga->mean_flop_per_j))
      best_fpga = &summary;
    if (summary.kind == DeviceKind::gpu &&
        (!best_gpu || summary.mean_flop_per_j > best_gpu->mean_flop_per_j))
      best_gpu = &summary;
  }
  if (best_fpga) report.best_fpga = best_fpga->name;
  if (best_gpu) report.best_gpu = best_gpu->name;
  if (best_fpga && best_gpu)
    report.efficiency_ratio = best_fpga->mean_flop_per_j / best_gpu->mean_flop_per_j;
  return report;
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "text") return ReportFormat::text;
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  fail(errc::config, "unknown format '" + name + "' (expected text | json | csv)");
}

namespace {

std::string render_report_text(const ComparisonReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-5s %14s %13s %15s %16s\n", "platform", "kind",
                "mean_latency_s", "mean_power_w", "mean_energy_kj", "mean_gflop_per_j");
  out += line;
  for (const PlatformSummary& p : report.platforms) {
    std::snprintf(line, sizeof line, "%-10s %-5s %14.2f %13.2f %15.2f %16.3f\n", p.name.c_str(),
                  to_string(p.kind), p.mean_latency_s, p.mean_power_w, p.mean_energy_kj,
                  p.mean_flop_per_j / 1e9);
    out += line;
  }
  if (report.efficiency_ratio) {
    std::snprintf(line, sizeof line,
                  "efficiency ratio best FPGA (%s) / best GPU (%s): %.4f FLOP/J per FLOP/J\n",
                  report.best_fpga.c_str(), report.best_gpu.c_str(), *report.efficiency_ratio);
    out += line;
  }
  return out;
}

nlohmann::ordered_json report_json(const ComparisonReport& report) {
  nlohmann::ordered_json doc;
  doc["tasks"] = report.tasks;
  doc["platforms"] = nlohmann::ordered_json::array();
  for (const PlatformSummary& p : report.platforms) {
    doc["platforms"].push_back({{"name", p.name},
                                {"kind", to_string(p.kind)},
                                {"mean_latency_s", p.mean_latency_s},
                                {"mean_power_w", p.mean_power_w},
                                {"mean_energy_kj", p.mean_energy_kj},
                                {"mean_flop_per_j", p.mean_flop_per_j}});
  }
  if (report.efficiency_ratio) {
    doc["efficiency_ratio"] = {{"best_fpga", report.best_fpga},
                               {"best_gpu", report.best_gpu},
                               {"ratio", *report.efficiency_ratio}};
  }
  return doc;
}

std::string render_report_csv(const ComparisonReport& report) {
  std::string out = "platform,kind,mean_latency_s,mean_power_w,mean_energy_kj,mean_flop_per_j\n";
  for (const PlatformSummary& p : report.platforms) {
    out += p.name;
    out += ',';
    out += to_string(p.kind);
    out += ',' + fmt("%.6g", p.mean_latency_s);
    out += ',' + fmt("%.6g", p.mean_power_w);
    out += ',' + fmt("%.6g", p.mean_energy_kj);
    out += ',' + fmt("%.10g", p.mean_flop_per_j);
    out += '\n';
  }
  if (report.efficiency_ratio) {
    out += "# efficiency_ratio," + report.best_fpga + "," + report.best_gpu + "," +
           fmt("%.6g", *report.efficiency_ratio) + "\n";
  }
  return out;
}

} // namespace

std::string render_report(const ComparisonReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::text: return render_report_text(report);
    case ReportFormat::json: return report_json(report).dump(2) + "\n";
    case ReportFormat::csv: return render_report_csv(report);
  }
  fail(errc::config, "render_report: unknown format");
}

std::string render_plan(const PartitionPlan& plan, ReportFormat format) {
  switch (format) {
    case ReportFormat::text: {
      std::string out = "partition plan\n";
      for (const TaskDecision& decision : plan.decisions) {
        out += "  task " + decision.task;
        if (decision.repeat > 1) out += " x" + std::to_string(decision.repeat);
        out += ":\n";
        for (const Allocation& a : decision.allocations) {
          out += "    " + a.platform + " " + to_string(a.variant) + "  " +
                 std::to_string(a.paths) + " paths\n";
        }
      }
      out += "projected makespan: " + fmt("%.6g", plan.projected_makespan) + " s\n";
      out += "projected energy:   " + fmt("%.6g", plan.projected_energy) + " J\n";
      out += "decision trace:\n";
      for (const std::string& line : plan.rationale) out += "  " + line + "\n";
      return out;
    }
    case ReportFormat::json: {
      nlohmann::ordered_json doc;
      doc["decisions"] = nlohmann::ordered_json::array();
      for (const TaskDecision& decision : plan.decisions) {
        nlohmann::ordered_json allocations = nlohmann::ordered_json::array();
        for (const Allocation& a : decision.allocations) {
          allocations.push_back(
              {{"platform", a.platform}, {"variant", to_string(a.variant)}, {"paths", a.paths}});
        }
        doc["decisions"].push_back({{"task", decision.task},
                                    {"repeat", decision.repeat},
                                    {"allocations", allocations}});
      }
      doc["projected_makespan_s"] = plan.projected_makespan;
      doc["projected_energy_j"] = plan.projected_energy;
      doc["rationale"] = plan.rationale;
      return doc.dump(2) + "\n";
    }
    case ReportFormat::csv: {
      std::string out = "task,repeat,platform,variant,paths\n";
      for (const TaskDecision& decision : plan.decisions) {
        for (const Allocation& a : decision.allocations) {
          out += decision.task + ',' + std::to_string(decision.repeat) + ',' + a.platform + ',' +
                 to_string(a.variant) + ',' + std::to_string(a.paths) + '\n';
        }
      }
      out += "# projected_makespan_s," + fmt("%.6g", plan.projected_makespan) + "\n";
      out += "# projected_energy_j," + fmt("%.6g", plan.projected_energy) + "\n";
      return out;
    }
  }
  fail(errc::config, "render_plan: unknown format");
}

} // namespace omc::devicelab
