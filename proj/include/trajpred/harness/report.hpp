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

#ifndef TRAJPRED_HARNESS_REPORT_HPP_
#define TRAJPRED_HARNESS_REPORT_HPP_

#include <string>
#include <vector>

#include "trajpred/harness/experiment.hpp"

namespace trajpred::harness
{

/// Middle element for odd counts, mean of the middle two for even.
double median(std::vector<double> values);

/// All run records (files matching *.json) under a directory, sorted by
/// filename for deterministic output.
std::vector<RunRecord> load_run_records(const std::string & dir);

/// One row per (arm, seed) sorted by arm then seed, plus one median row per
/// arm (seed column "median") recomputed over that arm's seeds.
std::string report_csv(const std::vector<RunRecord> & records);
void write_report_csv(const std::vector<RunRecord> & records, const std::string & path);

}  // namespace trajpred::harness

#endif  // TRAJPRED_HARNESS_REPORT_HPP_
