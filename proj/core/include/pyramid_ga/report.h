// Copyright 2026 The Pyramid GA Authors.
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

#ifndef PYRAMID_GA_REPORT_H_
#define PYRAMID_GA_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "pyramid_ga/experiment.h"

namespace pyramid_ga {

// Objective recorded for an instance on which no run found a feasible
// solution.
double CensoredValue(ProblemKind kind);  // 100 nurse, 0 mall

struct InstanceSummary {
  std::string instance;
  char strategy = 'S';
  int runs = 0;
  int feasible_runs = 0;
  std::optional<double> best;  // best feasible value over the runs
};

struct StrategySummary {
  char strategy = 'S';
  int instances = 0;
  double feasibility = 0;     // mean over instances of feasible_runs / runs
  double censored_mean = 0;   // censored value substituted for failed instances
  std::optional<double> exclusion_mean;  // failed instances left out
};

struct ProblemSummary {
  ProblemKind problem = ProblemKind::kNurse;
  std::vector<StrategySummary> strategies;  // S,R,B,D,J,A,C order
  std::vector<InstanceSummary> instances;   // by instance id, then strategy
};

struct Report {
  std::vector<ProblemSummary> problems;  // nurse before mall; absent when no records
};

// Independent of record order.
Report Aggregate(const std::vector<RunRecord>& records);

enum class ReportFormat { kText, kCsv };

// Text: one row per strategy, columns per problem present. CSV: one line
// per (problem, strategy). `detail` appends the per-instance table.
std::string RenderReport(const Report& report, ReportFormat format, bool detail = false);

}  // namespace pyramid_ga

#endif  // PYRAMID_GA_REPORT_H_
