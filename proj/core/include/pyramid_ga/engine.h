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

#ifndef PYRAMID_GA_ENGINE_H_
#define PYRAMID_GA_ENGINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pyramid_ga/partnering.h"
#include "pyramid_ga/population.h"
#include "pyramid_ga/problem.h"
#include "pyramid_ga/rng.h"
#include "pyramid_ga/topology.h"

namespace pyramid_ga {

struct EngineConfig {
  int subpop_size = 100;
  int main_size = 300;              // 300 nurse, 500 mall
  double uniform_gene_bias = 0.66;  // p of the uniform crossover
  double assembly_share = 0.5;      // share of children assembled at non-leaf nodes
  double mutation_rate = 0.01;
  double replacement_fraction = 0.9;
  int stop_patience = 50;
  int max_generations = 2000;
  std::uint64_t seed = 1;
  double penalty_min = 1.0;
  double penalty_growth = 2.0;
  double penalty_max = 1e12;
  int candidate_count = 10;          // strategy C pool
  int attractiveness_attempts = 16;  // strategy A rejection cap
  int torus_width = 10;
  int torus_height = 10;

  bool operator==(const EngineConfig&) const = default;
};

EngineConfig DefaultNurseConfig();
EngineConfig DefaultMallConfig();

// Throws ValidationError for out-of-range settings.
void ValidateEngineConfig(const EngineConfig& config);

// Applies one `key = value` override using the names EchoEngineConfig
// prints. Returns false for an unknown key; throws ValidationError for a
// malformed value.
bool ApplyEngineOverride(EngineConfig& config, std::string_view key, std::string_view value);

// `key = value` lines describing the run setup: population split, rates,
// stopping rule and strategy parameters.
std::string EchoEngineConfig(const EngineConfig& config, const PyramidTopology& topology,
                             StrategyKind strategy);
// Same, with a free-form strategy line such as "S,R,A,C".
std::string EchoEngineConfig(const EngineConfig& config, const PyramidTopology& topology,
                             std::string_view strategies);

struct GenerationStats {
  int generation = 0;
  std::int64_t best_violation = 0;  // lexicographic best of the top node(s)
  double best_raw = 0;
  double top_penalty_weight = 0;

  bool operator==(const GenerationStats&) const = default;
};

struct RunResult {
  bool feasible = false;
  double best_value = 0;              // raw objective of the best full agent
  Evaluation best_eval;
  std::vector<int> best_assignment;   // one value per global position
  int generations = 0;
  std::vector<GenerationStats> history;  // entry 0 is the initial population
  int attractiveness_attempt_cap = 0;

  bool operator==(const RunResult&) const = default;
};

// The hierarchical GA. One instance owns one sequential run; the random
// stream is part of the determinism contract.
class PyramidEngine {
 public:
  // Under strategy J the topology is replaced by ApplyJoined(topology).
  PyramidEngine(const ProblemAdapter& problem, const PyramidTopology& topology,
                EngineConfig config, StrategyKind strategy);

  void Initialize();
  void Step();
  RunResult Run();

  const PyramidTopology& topology() const { return topology_; }
  const PyramidLayout& layout() const { return layout_; }
  const std::vector<SubPopulation>& populations() const { return populations_; }
  const EngineConfig& config() const { return config_; }
  StrategyKind strategy() const { return strategy_; }
  int generation() const { return generation_; }
  int stall() const { return stall_; }
  bool initialized() const { return !populations_.empty(); }
  // Best agent (violation first) over the nodes that evaluate the original
  // objective.
  const Agent& best_full_agent() const { return best_full_; }

  // Elite count for a population of n agents: n - floor(replacement * n).
  int EliteCount(int n) const;

 private:
  struct Child {
    Genome genome;
    std::optional<Evaluation> eval;  // reusable while the genome is unmutated
    int target_cell = -1;            // strategy D placement
  };

  Evaluation EvaluateNode(int node, std::span<const int> genome) const;
  std::vector<std::size_t> SelectElites(const SubPopulation& population) const;
  void BreedNode(int node, const std::vector<SubPopulation>& parents,
                 const std::vector<RankWheel>& wheels, const std::vector<std::size_t>& best_index,
                 std::vector<std::optional<double>>& best_known, std::vector<Child>& children);
  Child AssemblyChild(int node, const std::vector<SubPopulation>& parents,
                      const std::vector<RankWheel>& wheels, const std::vector<std::size_t>& best_index,
                      std::optional<double>& best_known);
  SubPopulation Replace(const SubPopulation& parent, std::vector<std::size_t> elites,
                        std::vector<Child> children) const;
  void RecordGeneration();

  const ProblemAdapter& problem_;
  PyramidTopology topology_;
  PyramidLayout layout_;
  EngineConfig config_;
  StrategyKind strategy_;
  Direction direction_;
  Torus torus_;
  Rng rng_;
  std::vector<SubPopulation> populations_;
  std::vector<int> full_nodes_;
  Agent best_full_;
  int generation_ = 0;
  int stall_ = 0;
  std::vector<GenerationStats> history_;
};

RunResult RunPyramid(const ProblemAdapter& problem, const PyramidTopology& topology,
                     const EngineConfig& config, StrategyKind strategy);

}  // namespace pyramid_ga

#endif  // PYRAMID_GA_ENGINE_H_
