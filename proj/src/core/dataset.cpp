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
#include "core/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "core/error.hpp"
#include "core/text.hpp"

namespace omc::devicelab {

const char* to_string(DeviceKind kind) noexcept {
  switch (kind) {
    case DeviceKind::fpga: return "fpga";
    case DeviceKind::cpu: return "cpu";
    case DeviceKind::gpu: return "gpu";
  }
  return "?";
}

const char* to_string(Variant variant) noexcept {
  switch (variant) {
    case Variant::base: return "base";
    case Variant::tp: return "tp";
    case Variant::pp: return "pp";
  }
  return "?";
}

std::optional<Variant> variant_from_string(const std::string& name) noexcept {
  if (name == "base") return Variant::base;
  if (name == "tp") return Variant::tp;
  if (name == "pp") return Variant::pp;
  return std::nullopt;
}

MeasurementRow& MeasurementTable::row(const std::string& platform, const std::string& task,
                                      Variant variant) {
  for (MeasurementRow& row : rows_) {
    if (row.platform == platform && row.task == task && row.variant == variant) return row;
  }
  rows_.push_back({platform, task, variant, {}, {}, {}});
  return rows_.back();
}

const MeasurementRow* MeasurementTable::find(const std::string& platform, const std::string& task,
                                             Variant variant) const noexcept {
  for (const MeasurementRow& row : rows_) {
    if (row.platform == platform && row.task == task && row.variant == variant) return &row;
  }
  return nullptr;
}

std::vector<const MeasurementRow*> MeasurementTable::rows_for(const std::string& platform,
                                                              const std::string& task) const {
  std::vector<const MeasurementRow*> rows;
  for (Variant variant : {Variant::base, Variant::tp, Variant::pp}) {
    if (const MeasurementRow* row = find(platform, task, variant); row && row->has_measurement())
      rows.push_back(row);
  }
  return rows;
}

std::vector<std::string> MeasurementTable::tasks() const {
  std::vector<std::string> tasks;
  for (const MeasurementRow& row : rows_) {
    if (std::find(tasks.begin(), tasks.end(), row.task) == tasks.end()) tasks.push_back(row.task);
  }
  return tasks;
}

const DeviceProfile* Dataset::platform(const std::string& name) const noexcept {
  for (const DeviceProfile& profile : platforms) {
    if (profile.name == name) return &profile;
  }
  return nullptr;
}

namespace {

struct CsvReader {
  std::string path;
  std::ifstream in;
  int line_no = 0;

  explicit CsvReader(const std::string& file) : path(file), in(file) {
    if (!in) fail(errc::parse, "cannot open data file '" + file + "'");
  }

  std::string where() const { return path + ":" + std::to_string(line_no); }

  bool next(std::vector<std::string_view>& fields, std::string& storage) {
    while (std::getline(in, storage)) {
      ++line_no;
      const std::string_view t = text::trim(storage);
      if (t.empty() || t.front() == '#') continue;
      fields = text::split(t, ',');
      return true;
    }
    return false;
  }
};

std::optional<double> parse_cell(std::string_view cell, const std::string& context) {
  if (cell == "-" || cell.empty()) return std::nullopt;
  return text::parse_double(cell, context);
}

const DeviceProfile& require_platform(const std::vector<DeviceProfile>& platforms,
                                      std::string_view name, const std::string& where) {
  for (const DeviceProfile& p : platforms) {
    if (p.name == name) return p;
  }
  fail(errc::parse, where + ": unknown platform '" + std::string(name) + "'");
}

// Header layout of the wide measurement tables: `platform` (plus any fixed
// leading columns) followed by `task.variant` cells.
struct WideHeader {
  std::vector<std::pair<std::string, Variant>> cells; // per data column
};

WideHeader parse_wide_header(const std::vector<std::string_view>& fields, std::size_t fixed,
                             const std::string& where) {
  WideHeader header;
  for (std::size_t i = fixed; i < fields.size(); ++i) {
    const auto dot = fields[i].rfind('.');
    if (dot == std::string_view::npos)
      fail(errc::parse, where + ": header cell '" + std::string(fields[i]) +
                            "' is not of the form task.variant");
    const std::string task{fields[i].substr(0, dot)};
    const auto variant = variant_from_string(std::string(fields[i].substr(dot + 1)));
    if (!variant)
      fail(errc::parse, where + ": unknown variant in header cell '" + std::string(fields[i]) + "'");
    header.cells.emplace_back(task, *variant);
  }
  return header;
}

void load_wide_measurements(const std::string& path, const std::vector<DeviceProfile>& platforms,
                            MeasurementTable& table,
                            void (*assign)(MeasurementRow&, double)) {
  CsvReader reader(path);
  std::vector<std::string_view> fields;
  std::string storage;
  if (!reader.next(fields, storage)) fail(errc::parse, path + ": empty data file");
  if (fields.empty() || fields[0] != "platform")
    fail(errc::parse, reader.where() + ": first header column must be 'platform'");
  const WideHeader header = parse_wide_header(fields, 1, reader.where());

  while (reader.next(fields, storage)) {
    if (fields.size() != header.cells.size() + 1)
      fail(errc::parse, reader.where() + ": expected " + std::to_string(header.cells.size() + 1) +
                            " columns, got " + std::to_string(fields.size()));
    const DeviceProfile& platform = require_platform(platforms, fields[0], reader.where());
    for (std::size_t i = 0; i < header.cells.size(); ++i) {
      const auto value = parse_cell(fields[i + 1], reader.where());
      if (!value) continue;
      if (*value < 0.0) fail(errc::parse, reader.where() + ": negative measurement");
      assign(table.row(platform.name, header.cells[i].first, header.cells[i].second), *value);
    }
  }
}

} // namespace

std::vector<DeviceProfile> load_platforms_csv(const std::string& path) {
  CsvReader reader(path);
  std::vector<std::string_view> fields;
  std::string storage;
  if (!reader.next(fields, storage)) fail(errc::parse, path + ": empty data file");

  const std::vector<std::string> expected = {
      "name", "kind",  "chip",    "vendor",  "standard",  "comm",       "cmos_nm",
      "clock_mhz", "luts", "ffs", "brams", "dsps", "threads", "memory_gb", "idle_watts"};
  if (fields.size() != expected.size())
    fail(errc::parse, reader.where() + ": unexpected platform header");
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (fields[i] != expected[i])
      fail(errc::parse, reader.where() + ": expected header column '" + expected[i] + "', got '" +
                            std::string(fields[i]) + "'");
  }

  std::vector<DeviceProfile> platforms;
  while (reader.next(fields, storage)) {
    if (fields.size() != expected.size())
      fail(errc::parse, reader.where() + ": wrong column count");
    DeviceProfile p;
    p.name = std::string(fields[0]);
    if (fields[1] == "fpga") p.kind = DeviceKind::fpga;
    else if (fields[1] == "cpu") p.kind = DeviceKind::cpu;
    else if (fields[1] == "gpu") p.kind = DeviceKind::gpu;
    else fail(errc::parse, reader.where() + ": unknown device kind '" + std::string(fields[1]) + "'");
    p.chip = std::string(fields[2]);
    p.vendor = std::string(fields[3]);
    p.standard = std::string(fields[4]);
    p.comm = std::string(fields[5]);
    p.cmos_nm = parse_cell(fields[6], reader.where());
    p.clock_mhz = parse_cell(fields[7], reader.where());
    p.resources.lut = parse_cell(fields[8], reader.where());
    p.resources.ff = parse_cell(fields[9], reader.where());
    p.resources.bram = parse_cell(fields[10], reader.where());
    p.resources.dsp = parse_cell(fields[11], reader.where());
    p.threads = parse_cell(fields[12], reader.where());
    p.memory_gb = parse_cell(fields[13], reader.where());
    const auto idle = parse_cell(fields[14], reader.where());
    if (!idle || *idle < 0.0) fail(errc::parse, reader.where() + ": idle_watts must be >= 0");
    p.idle_watts = *idle;
    if (std::any_of(platforms.begin(), platforms.end(),
                    [&](const DeviceProfile& q) { return q.name == p.name; }))
      fail(errc::parse, reader.where() + ": duplicate platform '" + p.name + "'");
    platforms.push_back(std::move(p));
  }
  if (platforms.empty()) fail(errc::parse, path + ": no platforms defined");
  return platforms;
}

void load_latency_csv(const std::string& path, const std::vector<DeviceProfile>& platforms,
                      MeasurementTable& table) {
  load_wide_measurements(path, platforms, table,
                         [](MeasurementRow& row, double v) { row.latency_s = v; });
}

void load_energy_csv(const std::string& path, const std::vector<DeviceProfile>& platforms,
                     MeasurementTable& table) {
  load_wide_measurements(path, platforms, table,
                         [](MeasurementRow& row, double v) { row.energy_kj = v; });
}

void load_resources_csv(const std::string& path, const std::vector<DeviceProfile>& platforms,
                        MeasurementTable& table) {
  CsvReader reader(path);
  std::vector<std::string_view> fields;
  std::string storage;
  if (!reader.next(fields, storage)) fail(errc::parse, path + ": empty data file");
  if (fields.size() < 2 || fields[0] != "platform" || fields[1] != "resource")
    fail(errc::parse, reader.where() + ": header must start with 'platform,resource'");
  const WideHeader header = parse_wide_header(fields, 2, reader.where());

  while (reader.next(fields, storage)) {
    if (fields.size() != header.cells.size() + 2)
      fail(errc::parse, reader.where() + ": wrong column count");
    const DeviceProfile& platform = require_platform(platforms, fields[0], reader.where());
    const std::string resource{fields[1]};
    if (resource != "lut" && resource != "ff" && resource != "bram" && resource != "dsp")
      fail(errc::parse, reader.where() + ": unknown resource '" + resource + "'");
    for (std::size_t i = 0; i < header.cells.size(); ++i) {
      const auto value = parse_cell(fields[i + 2], reader.where());
      if (!value) continue;
      if (*value < 0.0 || *value > 100.0)
        fail(errc::parse, reader.where() + ": resource percentage out of [0, 100]");
      MeasurementRow& row =
          table.row(platform.name, header.cells[i].first, header.cells[i].second);
      if (!row.resource_pct) row.resource_pct = ResourceFigures{};
      if (resource == "lut") row.resource_pct->lut = value;
      else if (resource == "ff") row.resource_pct->ff = value;
      else if (resource == "bram") row.resource_pct->bram = value;
      else row.resource_pct->dsp = value;
    }
  }
}

std::map<std::string, double> load_complexity_csv(const std::string& path,
                                                  std::uint32_t& steps_out) {
  CsvReader reader(path);
  std::vector<std::string_view> fields;
  std::string storage;
  if (!reader.next(fields, storage)) fail(errc::parse, path + ": empty data file");
  if (fields.size() != 4 || fields[0] != "task" || fields[1] != "underlying" ||
      fields[2] != "option" || fields[3] != "flop_per_sim")
    fail(errc::parse, reader.where() + ": expected header 'task,underlying,option,flop_per_sim'");

  std::map<std::string, double> complexity;
  steps_out = kMeasuredSteps;
  while (reader.next(fields, storage)) {
    if (fields.size() != 4) fail(errc::parse, reader.where() + ": wrong column count");
    const double flops = text::parse_double(fields[3], reader.where());
    if (!(flops > 0.0)) fail(errc::parse, reader.where() + ": flop_per_sim must be > 0");
    complexity[std::string(fields[0])] = flops;
  }
  return complexity;
}

Dataset load_dataset(const std::string& dir) {
  namespace fs = std::filesystem;
  const auto file = [&](const char* name) { return (fs::path(dir) / name).string(); };

  Dataset dataset;
  dataset.platforms = load_platforms_csv(file("platforms.csv"));
  load_latency_csv(file("latency.csv"), dataset.platforms, dataset.table);
  load_energy_csv(file("energy.csv"), dataset.platforms, dataset.table);
  if (fs::exists(file("resources.csv")))
    load_resources_csv(file("resources.csv"), dataset.platforms, dataset.table);
  dataset.complexity = load_complexity_csv(file("complexity.csv"), dataset.complexity_steps);
  if (fs::exists(file("flop_costs.txt")))
    dataset.costs = metrics::OpCostTable::load(file("flop_costs.txt"));
  return dataset;
}

} // namespace omc::devicelab
