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

#ifndef PYRAMID_GA_EXPERIMENT_H_
#define PYRAMID_GA_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pyramid_ga/engine.h"
#include "pyramid_ga/mall_problem.h"
#include "pyramid_ga/nurse_problem.h"
#include "pyramid_ga/partnering.h"

namespace pyramid_ga {

enum class ProblemKind { kNurse, kMall };

std::string_view ProblemName(ProblemKind kind);
std::optional<ProblemKind> ProblemFromName(std::string_view name);

// Seeds shared by every strategy and instance of an experiment.
std::vector<std::uint64_t> DefaultSeeds();

struct GeneratorSpec {
  int count = 10;
  std::uint64_t seed = 1;
  NurseGenParams nurse;
  MallGenParams mall;
};

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::kNurse;
  std::vector<std::filesystem::path> instance_paths;  // empty: use the generator
  GeneratorSpec generate;
  std::vector<StrategyKind> strategies{AllStrategies().begin(), AllStrategies().end()};
  std::vector<std::uint64_t> seeds = DefaultSeeds();
  std::vector<std::pair<std::string, std::string>> engine_overrides;  // in file order
  std::filesystem::path records_path;  // empty: not set
  std::filesystem::path report_path;
  bool timing = false;  // fill the wall_ms column (breaks byte-identical reruns)

  // Problem defaults with the overrides applied. Throws ValidationError.
  EngineConfig Engine() const;
};

// Parses `key = value` lines. Relative paths resolve against `base_dir`.
// Keys: problem, instances, generate.{count,seed,nurses,patterns,
// patterns_per_nurse,tightness,headcount,locations,areas,types,groups,
// type_range}, strategies, seeds, runs, engine.<setting>, records, report,
// timing. Throws ParseError or ValidationError.
ExperimentConfig ParseExperimentConfig(std::string_view text,
                                       const std::filesystem::path& base_dir = {});
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

struct ExperimentInstance {
  std::string id;
  std::shared_ptr<const NurseInstance> nurse;
  std::shared_ptr<const MallInstance> mall;
};

// Reads or generates the instances. Failures throw ValidationError naming
// the instance.
std::vector<ExperimentInstance> LoadInstances(const ExperimentConfig& config);

// Generator instance ids: "nurse-01", "mall-07", ...
std::string GeneratedInstanceId(ProblemKind kind, int index);
std::uint64_t GeneratedInstanceSeed(std::uint64_t base, int index);

struct RunRecord {
  std::string problem;
  std::string instance;
  char strategy = 'S';
  std::uint64_t seed = 0;
  bool feasible = false;
  std::optional<double> best_value;  // present iff feasible
  int generations = 0;
  std::optional<double> wall_ms;
  std::string status = "ok";  // "ok" or "error"

  bool operator==(const RunRecord&) const = default;
};

// Engine seed of one run. Strategies share it, so every strategy starts
// from the same initial populations for a given (instance, seed).
std::uint64_t RunSeed(std::uint64_t base_seed, std::string_view instance_id);

// Single run on one instance; exceptions inside the engine become an
// "error" record.
RunRecord RunOne(const ExperimentInstance& instance, ProblemKind problem, const EngineConfig& engine,
                 StrategyKind strategy, std::uint64_t base_seed, bool timing);

using RunCallback = std::function<void(const RunRecord&)>;

// One record per (instance, strategy, seed), ordered by instance, then
// strategy and seed in config order. `threads` <= 1 runs sequentially;
// by default PYRAMID_GA_THREADS decides.
std::vector<RunRecord> RunExperiment(const ExperimentConfig& config,
                                     const std::vector<ExperimentInstance>& instances,
                                     std::optional<int> threads = std::nullopt,
                                     const RunCallback& on_done = {});

int ThreadsFromEnvironment();

// Population layout of the experiment's problem on its first instance.
PyramidTopology ExperimentTopology(const ExperimentConfig& config,
                                   const std::vector<ExperimentInstance>& instances);
// Experiment lines followed by the engine echo.
std::string EchoExperiment(const ExperimentConfig& config,
                           const std::vector<ExperimentInstance>& instances);

inline constexpr std::string_view kRecordHeader =
    "problem,instance,strategy,seed,feasible,best_value,generations,wall_ms,status";

void WriteRecords(std::ostream& out, const std::vector<RunRecord>& records);
std::string RenderRecords(const std::vector<RunRecord>& records);
// Throws ParseError for a malformed line or a wrong header.
std::vector<RunRecord> ParseRecords(std::string_view text);

}  // namespace pyramid_ga

#endif  // PYRAMID_GA_EXPERIMENT_H_
