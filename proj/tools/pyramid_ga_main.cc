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

// Command line front end: generate instances, run experiments, aggregate
// records and brute-force tiny instances.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pyramid_ga/errors.h"
#include "pyramid_ga/experiment.h"
#include "pyramid_ga/mall_problem.h"
#include "pyramid_ga/nurse_problem.h"
#include "pyramid_ga/oracle.h"
#include "pyramid_ga/report.h"
#include "pyramid_ga/text_format.h"

namespace {

using namespace pyramid_ga;

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return ReadAll(in);
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << text;
  if (!out) throw ValidationError("write failed: " + path.string());
}

ProblemKind ProblemArg(const std::string& name) {
  auto kind = ProblemFromName(name);
  if (!kind) throw UsageError("--problem must be nurse or mall");
  return *kind;
}

struct GenerateArgs {
  std::string problem = "nurse";
  int count = 10;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  NurseGenParams nurse;
  MallGenParams mall;
  double tightness = 0.3;
  bool no_headcount = false;
  bool no_type_range = false;
};

int GenerateCommand(const GenerateArgs& args) {
  const ProblemKind kind = ProblemArg(args.problem);
  if (args.count < 1) throw UsageError("--count must be at least 1");
  for (int i = 0; i < args.count; ++i) {
    const std::string id = GeneratedInstanceId(kind, i);
    const std::uint64_t seed = GeneratedInstanceSeed(args.seed, i);
    std::string text;
    std::vector<std::string> notes;
    if (kind == ProblemKind::kNurse) {
      NurseGenParams p = args.nurse;
      p.tightness = args.tightness;
      p.emit_headcount = !args.no_headcount;
      auto generated = GenerateNurseInstance(p, seed);
      text = RenderNurseInstance(generated.instance);
      notes = generated.clamped;
    } else {
      MallGenParams p = args.mall;
      p.tightness = args.tightness;
      p.standard_type_range = !args.no_type_range;
      auto generated = GenerateMallInstance(p, seed);
      text = RenderMallInstance(generated.instance);
      notes = generated.clamped;
    }
    const auto path = std::filesystem::path(args.out_dir) / (id + ".txt");
    WriteFile(path, text);
    for (const std::string& note : notes) std::cerr << id << ": " << note << '\n';
    std::cout << path.string() << '\n';
  }
  return 0;
}

struct RunArgs {
  std::string config;
  std::vector<std::string> strategies;
  std::string records;
  std::string report;
  std::optional<int> threads;
  bool quiet = false;
};

int RunCommand(const RunArgs& args) {
  ExperimentConfig cfg = LoadExperimentConfig(args.config);
  if (!args.strategies.empty()) {
    cfg.strategies.clear();
    for (const std::string& item : args.strategies) {
      std::stringstream list(item);
      std::string letter;
      while (std::getline(list, letter, ',')) {
        auto kind = StrategyFromLetter(letter);
        if (!kind) {
          throw UsageError("unknown strategy '" + letter + "'; expected one of " +
                           std::string(kStrategyLetters));
        }
        cfg.strategies.push_back(*kind);
      }
    }
  }
  if (!args.records.empty()) cfg.records_path = args.records;
  if (!args.report.empty()) cfg.report_path = args.report;
  if (cfg.records_path.empty()) cfg.records_path = "records.csv";

  const std::vector<ExperimentInstance> instances = LoadInstances(cfg);
  std::cout << EchoExperiment(cfg, instances) << std::flush;

  std::size_t done = 0;
  const std::size_t total = instances.size() * cfg.strategies.size() * cfg.seeds.size();
  RunCallback progress;
  if (!args.quiet) {
    progress = [&](const RunRecord& r) {
      ++done;
      std::cerr << "[" << done << "/" << total << "] " << r.instance << ' ' << r.strategy
                << " seed " << r.seed << ": "
                << (r.status != "ok" ? "error"
                    : r.feasible     ? FormatShortest(*r.best_value)
                                     : std::string("infeasible"))
                << '\n';
    };
  }
  const std::vector<RunRecord> records = RunExperiment(cfg, instances, args.threads, progress);
  WriteFile(cfg.records_path, RenderRecords(records));
  const std::string report = RenderReport(Aggregate(records), ReportFormat::kText);
  if (!cfg.report_path.empty()) WriteFile(cfg.report_path, report);
  std::cout << '\n' << report;
  return 0;
}

struct ReportArgs {
  std::vector<std::string> records;
  std::string format = "text";
  bool detail = false;
  std::string out;
};

int ReportCommand(const ReportArgs& args) {
  ReportFormat format;
  if (args.format == "text") format = ReportFormat::kText;
  else if (args.format == "csv") format = ReportFormat::kCsv;
  else throw UsageError("--format must be text or csv");
  std::vector<RunRecord> all;
  for (const std::string& path : args.records) {
    try {
      std::vector<RunRecord> records = ParseRecords(ReadFile(path));
      all.insert(all.end(), records.begin(), records.end());
    } catch (const ParseError& e) {
      throw ValidationError(path + ": " + e.what());
    }
  }
  const std::string text = RenderReport(Aggregate(all), format, args.detail);
  if (args.out.empty()) std::cout << text;
  else WriteFile(args.out, text);
  return 0;
}

struct OracleArgs {
  std::string instance;
  std::string problem;
  std::uint64_t limit = kDefaultOracleLimit;
};

int OracleCommand(const OracleArgs& args) {
  const std::string text = ReadFile(args.instance);
  ProblemKind kind;
  if (!args.problem.empty()) {
    kind = ProblemArg(args.problem);
  } else {
    const auto lines = TokenizeLines(text);
    if (lines.empty()) throw ValidationError("empty instance file");
    const std::string& head = lines.front().tokens.front();
    if (head == "NURSE") kind = ProblemKind::kNurse;
    else if (head == "MALL") kind = ProblemKind::kMall;
    else throw ValidationError("cannot tell the problem from the header; pass --problem");
  }
  OracleResult result;
  try {
    result = kind == ProblemKind::kNurse ? NurseOracle(ParseNurseInstance(text), args.limit)
                                         : MallOracle(ParseMallInstance(text), args.limit);
  } catch (const ParseError& e) {
    throw ValidationError(args.instance + ": " + e.what());
  }
  std::cout << "problem = " << ProblemName(kind) << '\n'
            << "feasible = " << (result.feasible ? "true" : "false") << '\n';
  if (result.feasible) {
    std::cout << "best_value = " << FormatShortest(result.best_value) << '\n' << "assignment =";
    for (int v : result.assignment) std::cout << ' ' << v;
    std::cout << '\n';
  }
  std::cout << "enumerated = " << result.enumerated << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical (pyramidal) genetic algorithm for nurse scheduling and mall layout"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Write generated instances to files");
  generate->add_option("--problem", gen.problem, "nurse or mall")->capture_default_str();
  generate->add_option("--count", gen.count, "Number of instances")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Base generator seed")->capture_default_str();
  generate->add_option("--out", gen.out_dir, "Output directory")->capture_default_str();
  generate->add_option("--tightness", gen.tightness, "Constraint tightness in [0, 1]")
      ->capture_default_str();
  generate->add_option("--nurses", gen.nurse.nurse_count, "Nurse count")->capture_default_str();
  generate->add_option("--patterns", gen.nurse.pattern_count, "Shift pattern count")
      ->capture_default_str();
  generate->add_option("--patterns-per-nurse", gen.nurse.patterns_per_nurse,
                       "Admissible patterns per nurse")
      ->capture_default_str();
  generate->add_flag("--no-headcount", gen.no_headcount, "Omit nominal headcount lines");
  generate->add_option("--locations", gen.mall.location_count, "Mall locations")
      ->capture_default_str();
  generate->add_option("--areas", gen.mall.area_count, "Mall areas")->capture_default_str();
  generate->add_option("--types", gen.mall.type_count, "Shop types")->capture_default_str();
  generate->add_option("--groups", gen.mall.group_count, "Shop type groups")->capture_default_str();
  generate->add_flag("--no-type-range", gen.no_type_range,
                     "Allow type counts outside 20..50 (toy instances)");

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment from a config file");
  run_cmd->add_option("config", run.config, "Experiment config (key = value lines)")->required();
  run_cmd->add_option("--strategy", run.strategies,
                      "Strategy letters, repeatable or comma separated: S,R,B,D,J,A,C");
  run_cmd->add_option("--records", run.records, "Records file (overrides the config)");
  run_cmd->add_option("--report", run.report, "Text report file (overrides the config)");
  run_cmd->add_option("--threads", run.threads,
                      "Concurrent runs; default PYRAMID_GA_THREADS, 0 = sequential");
  run_cmd->add_flag("--quiet", run.quiet, "No per-run progress on stderr");

  ReportArgs rep;
  CLI::App* report = app.add_subcommand("report", "Aggregate stored run records");
  report->add_option("records", rep.records, "Records files")->required();
  report->add_option("--format", rep.format, "text or csv")->capture_default_str();
  report->add_flag("--detail", rep.detail, "Append the per-instance table");
  report->add_option("--out", rep.out, "Output file (default stdout)");

  OracleArgs ora;
  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustively solve a tiny instance");
  oracle->add_option("instance", ora.instance, "Instance file")->required();
  oracle->add_option("--problem", ora.problem, "nurse or mall (default: from the header)");
  oracle->add_option("--limit", ora.limit, "Maximum assignments to enumerate")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*generate) return GenerateCommand(gen);
    if (*run_cmd) return RunCommand(run);
    if (*report) return ReportCommand(rep);
    if (*oracle) return OracleCommand(ora);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}
