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

#include "pyramid_ga/report.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "pyramid_ga/text_format.h"

namespace pyramid_ga {

double CensoredValue(ProblemKind kind) { return kind == ProblemKind::kNurse ? 100.0 : 0.0; }

namespace {

int StrategyOrder(char letter) {
  return static_cast<int>(kStrategyLetters.find(letter));
}

bool Better(ProblemKind kind, double a, double b) {
  return kind == ProblemKind::kNurse ? a < b : a > b;
}

std::string Percent(double fraction) {
  return std::to_string(std::lround(fraction * 100.0)) + "%";
}

std::string PadLeft(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string PadRight(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

constexpr std::size_t kColumn = 8;

}  // namespace

Report Aggregate(const std::vector<RunRecord>& records) {
  // (problem, instance, strategy) -> summary; std::map keeps the output
  // independent of record order.
  std::map<std::tuple<int, std::string, int>, InstanceSummary> cells;
  for (const RunRecord& r : records) {
    const ProblemKind kind = *ProblemFromName(r.problem);
    InstanceSummary& s =
        cells[{static_cast<int>(kind), r.instance, StrategyOrder(r.strategy)}];
    s.instance = r.instance;
    s.strategy = r.strategy;
    ++s.runs;
    if (r.feasible && r.best_value) {
      ++s.feasible_runs;
      if (!s.best || Better(kind, *r.best_value, *s.best)) s.best = r.best_value;
    }
  }
  Report report;
  for (const ProblemKind kind : {ProblemKind::kNurse, ProblemKind::kMall}) {
    ProblemSummary summary;
    summary.problem = kind;
    for (const auto& [key, cell] : cells) {
      if (std::get<0>(key) == static_cast<int>(kind)) summary.instances.push_back(cell);
    }
    if (summary.instances.empty()) continue;
    for (char letter : kStrategyLetters) {
      if (letter == ',') continue;
      StrategySummary row;
      row.strategy = letter;
      double feasibility = 0, censored = 0, excluded = 0;
      int solved = 0;
      for (const InstanceSummary& cell : summary.instances) {
        if (cell.strategy != letter) continue;
        ++row.instances;
        feasibility += static_cast<double>(cell.feasible_runs) / cell.runs;
        censored += cell.best.value_or(CensoredValue(kind));
        if (cell.best) {
          excluded += *cell.best;
          ++solved;
        }
      }
      if (row.instances == 0) continue;
      row.feasibility = feasibility / row.instances;
      row.censored_mean = censored / row.instances;
      if (solved > 0) row.exclusion_mean = excluded / solved;
      summary.strategies.push_back(row);
    }
    report.problems.push_back(std::move(summary));
  }
  return report;
}

std::string RenderReport(const Report& report, ReportFormat format, bool detail) {
  std::ostringstream out;
  if (format == ReportFormat::kCsv) {
    out << "problem,strategy,instances,feasibility_percent,censored_mean,exclusion_mean\n";
    for (const ProblemSummary& p : report.problems) {
      for (const StrategySummary& s : p.strategies) {
        out << ProblemName(p.problem) << ',' << s.strategy << ',' << s.instances << ','
            << std::lround(s.feasibility * 100.0) << ',' << FormatFixed(s.censored_mean, 1) << ','
            << (s.exclusion_mean ? FormatFixed(*s.exclusion_mean, 1) : "") << '\n';
      }
    }
    if (detail) {
      out << "\nproblem,instance,strategy,runs,feasible_runs,best\n";
      for (const ProblemSummary& p : report.problems) {
        for (const InstanceSummary& c : p.instances) {
          out << ProblemName(p.problem) << ',' << c.instance << ',' << c.strategy << ',' << c.runs
              << ',' << c.feasible_runs << ',' << (c.best ? FormatShortest(*c.best) : "") << '\n';
        }
      }
    }
    return out.str();
  }

  out << PadRight("Strategy", kColumn);
  for (const ProblemSummary& p : report.problems) {
    const bool nurse = p.problem == ProblemKind::kNurse;
    out << "  " << PadLeft(nurse ? "N Cost" : "M Rent", kColumn) << "  "
        << PadLeft(nurse ? "N Feas" : "M Feas", kColumn) << "  "
        << PadLeft(nurse ? "N Excl" : "M Excl", kColumn);
  }
  out << '\n';
  for (char letter : kStrategyLetters) {
    if (letter == ',') continue;
    std::string line = PadRight(std::string(1, letter), kColumn);
    bool any = false;
    for (const ProblemSummary& p : report.problems) {
      auto it = std::find_if(p.strategies.begin(), p.strategies.end(),
                             [&](const StrategySummary& s) { return s.strategy == letter; });
      if (it == p.strategies.end()) {
        line += "  " + PadLeft("-", kColumn) + "  " + PadLeft("-", kColumn) + "  " +
                PadLeft("-", kColumn);
        continue;
      }
      any = true;
      line += "  " + PadLeft(FormatFixed(it->censored_mean, 1), kColumn) + "  " +
              PadLeft(Percent(it->feasibility), kColumn) + "  " +
              PadLeft(it->exclusion_mean ? FormatFixed(*it->exclusion_mean, 1) : "-", kColumn);
    }
    if (any) out << line << '\n';
  }
  if (detail && !report.problems.empty()) {
    std::size_t width = std::string("Instance").size();
    for (const ProblemSummary& p : report.problems) {
      for (const InstanceSummary& c : p.instances) width = std::max(width, c.instance.size());
    }
    out << '\n'
        << PadRight("Problem", 7) << "  " << PadRight("Instance", width) << "  Strategy  "
        << PadLeft("Feasible", kColumn) << "  " << PadLeft("Best", kColumn) << '\n';
    for (const ProblemSummary& p : report.problems) {
      for (const InstanceSummary& c : p.instances) {
        out << PadRight(std::string(ProblemName(p.problem)), 7) << "  "
            << PadRight(c.instance, width) << "  " << PadRight(std::string(1, c.strategy), 8)
            << "  "
            << PadLeft(std::to_string(c.feasible_runs) + "/" + std::to_string(c.runs), kColumn)
            << "  " << PadLeft(c.best ? FormatFixed(*c.best, 1) : "-", kColumn) << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace pyramid_ga
