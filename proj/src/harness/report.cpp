// Copyright 2026 The trajpred Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trajpred/harness/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

namespace trajpred::harness
{

double median(std::vector<double> values)
{
  if (values.empty()) {
    throw std::invalid_argument("median: empty input");
  }
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n % 2 == 1) {
    return values[n / 2];
  }
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<RunRecord> load_run_records(const std::string & dir)
{
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw std::runtime_error("run record directory not found: " + dir);
  }
  std::vector<std::string> files;
  for (const auto & entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<RunRecord> records;
  for (const auto & file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      throw std::runtime_error("cannot open run record: " + file);
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    records.push_back(RunRecord::from_json(text));
  }
  return records;
}

std::string report_csv(const std::vector<RunRecord> & records)
{
  if (records.empty()) {
    throw std::invalid_argument("report_csv: no run records");
  }
  std::vector<const RunRecord *> sorted;
  for (const auto & r : records) {
    sorted.push_back(&r);
  }
  std::sort(sorted.begin(), sorted.end(), [](const RunRecord * a, const RunRecord * b) {
    if (a->arm_id != b->arm_id) {
      return a->arm_id < b->arm_id;
    }
    return a->seed < b->seed;
  });

  std::string csv = std::string(kReportCsvHeader) + "\n";
  std::map<std::string, std::vector<const RunRecord *>> by_arm;
  for (const RunRecord * r : sorted) {
    csv += report_csv_row(r->arm_id, std::to_string(r->seed), r->report) + "\n";
    by_arm[r->arm_id].push_back(r);
  }
  for (const auto & [arm, runs] : by_arm) {
    auto collect = [&](auto getter) {
      std::vector<double> values;
      for (const RunRecord * r : runs) {
        values.push_back(getter(r->report));
      }
      return median(std::move(values));
    };
    MetricReport med;
    med.min_ade_1 = collect([](const MetricReport & m) { return m.min_ade_1; });
    med.min_ade_5 = collect([](const MetricReport & m) { return m.min_ade_5; });
    med.min_ade_10 = collect([](const MetricReport & m) { return m.min_ade_10; });
    med.fde = collect([](const MetricReport & m) { return m.fde; });
    med.hit_rate_5_2m = collect([](const MetricReport & m) { return m.hit_rate_5_2m; });
    csv += report_csv_row(arm, "median", med) + "\n";
  }
  return csv;
}

void write_report_csv(const std::vector<RunRecord> & records, const std::string & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write report: " + path);
  }
  out << report_csv(records);
}

}  // namespace trajpred::harness
