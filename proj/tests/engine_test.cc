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

#include "pyramid_ga/engine.h"

#include <gtest/gtest.h>

#include <string>

#include "pyramid_ga/adapters.h"
#include "pyramid_ga/errors.h"
#include "support/test_support.h"

namespace pyramid_ga {
namespace {

EngineConfig SmallConfig(std::uint64_t seed) {
  EngineConfig c = DefaultNurseConfig();
  c.subpop_size = 20;
  c.main_size = 40;
  c.max_generations = 25;
  c.seed = seed;
  return c;
}

TEST(EngineConfigTest, Defaults) {
  EXPECT_EQ(DefaultNurseConfig().main_size, 300);
  EXPECT_EQ(DefaultMallConfig().main_size, 500);
  const EngineConfig c = DefaultNurseConfig();
  EXPECT_EQ(c.subpop_size, 100);
  EXPECT_DOUBLE_EQ(c.uniform_gene_bias, 0.66);
  EXPECT_DOUBLE_EQ(c.mutation_rate, 0.01);
  EXPECT_DOUBLE_EQ(c.replacement_fraction, 0.9);
  EXPECT_EQ(c.stop_patience, 50);
  EXPECT_NO_THROW(ValidateEngineConfig(c));
}

TEST(EngineConfigTest, Validation) {
  EngineConfig c = DefaultNurseConfig();
  c.mutation_rate = 1.5;
  EXPECT_THROW(ValidateEngineConfig(c), ValidationError);
  c = DefaultNurseConfig();
  c.penalty_growth = 1.0;
  EXPECT_THROW(ValidateEngineConfig(c), ValidationError);
  c = DefaultNurseConfig();
  c.subpop_size = 0;
  EXPECT_THROW(ValidateEngineConfig(c), ValidationError);
}

TEST(EngineConfigTest, Overrides) {
  EngineConfig c = DefaultNurseConfig();
  EXPECT_TRUE(ApplyEngineOverride(c, "mutation_rate", "0.02"));
  EXPECT_DOUBLE_EQ(c.mutation_rate, 0.02);
  EXPECT_TRUE(ApplyEngineOverride(c, "stop_patience", "7"));
  EXPECT_EQ(c.stop_patience, 7);
  EXPECT_FALSE(ApplyEngineOverride(c, "no_such_key", "1"));
  EXPECT_THROW(ApplyEngineOverride(c, "stop_patience", "x"), ValidationError);
}

TEST(EngineConfigTest, EchoNamesPopulationSplit) {
  const std::string nurse = EchoEngineConfig(DefaultNurseConfig(), BuildNurseTopology(300),
                                             StrategyKind::kRankSelection);
  EXPECT_NE(nurse.find("strategy = S\n"), std::string::npos);
  EXPECT_NE(nurse.find("population_total = 1000\n"), std::string::npos);
  EXPECT_NE(nurse.find("population_split = 7x100+300\n"), std::string::npos);
  const std::string mall = EchoEngineConfig(DefaultMallConfig(), BuildMallTopology(500), "S,R,A,C");
  EXPECT_NE(mall.find("population_split = 5x100+500\n"), std::string::npos);
  EXPECT_NE(mall.find("uniform_gene_bias = 0.66\n"), std::string::npos);
  EXPECT_NE(mall.find("replacement_fraction = 0.9\n"), std::string::npos);
  EXPECT_NE(mall.find("stop_patience = 50\n"), std::string::npos);
}

class EngineRunTest : public ::testing::TestWithParam<StrategyKind> {};

TEST_P(EngineRunTest, DeterministicAndSizeConserving) {
  const NurseInstance inst = testing::TinyNurseInstance(3);
  const NurseAdapter adapter(inst);
  const PyramidTopology t = BuildNurseTopology(40, 20);
  const RunResult a = RunPyramid(adapter, t, SmallConfig(5), GetParam());
  const RunResult b = RunPyramid(adapter, t, SmallConfig(5), GetParam());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.history.size(), static_cast<std::size_t>(a.generations) + 1);
  EXPECT_EQ(a.best_assignment.size(), static_cast<std::size_t>(inst.nurse_count()));

  PyramidEngine engine(adapter, t, SmallConfig(5), GetParam());
  engine.Initialize();
  for (int gen = 0; gen < 5; ++gen) {
    engine.Step();
    const auto& nodes = engine.topology().nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      ASSERT_EQ(engine.populations()[i].agents.size(), static_cast<std::size_t>(nodes[i].population_size));
    }
  }
}

TEST_P(EngineRunTest, BestNeverGetsWorse) {
  const MallInstance m = testing::TinyMallInstance(2);
  const MallAdapter adapter(m);
  EngineConfig c = DefaultMallConfig();
  c.subpop_size = 20;
  c.main_size = 40;
  c.max_generations = 30;
  c.seed = 17;
  const RunResult r = RunPyramid(adapter, BuildMallTopology(40, m.area_count, 20), c, GetParam());
  for (std::size_t i = 1; i < r.history.size(); ++i) {
    const auto& prev = r.history[i - 1];
    const auto& cur = r.history[i];
    ASSERT_TRUE(cur.best_violation < prev.best_violation ||
                (cur.best_violation == prev.best_violation && cur.best_raw >= prev.best_raw));
  }
  EXPECT_EQ(r.best_eval, adapter.Evaluate(adapter.full_mask(), Measure::kFull, r.best_assignment));
  EXPECT_EQ(r.feasible, r.best_eval.feasible());
  EXPECT_EQ(r.best_value, r.best_eval.raw);
}

INSTANTIATE_TEST_SUITE_P(AllStrategies, EngineRunTest, ::testing::ValuesIn(AllStrategies()),
                         [](const auto& info) { return std::string(1, StrategyLetter(info.param)); });

TEST(EngineTest, SeedChangesTheRun) {
  const NurseInstance inst = testing::TinyNurseInstance(4);
  const NurseAdapter adapter(inst);
  const PyramidTopology t = BuildNurseTopology(40, 20);
  const RunResult a = RunPyramid(adapter, t, SmallConfig(1), StrategyKind::kRandom);
  const RunResult b = RunPyramid(adapter, t, SmallConfig(2), StrategyKind::kRandom);
  EXPECT_NE(a.history, b.history);
}

TEST(EngineTest, EliteCount) {
  const NurseInstance inst = testing::TinyNurseInstance(1);
  const NurseAdapter adapter(inst);
  PyramidEngine engine(adapter, BuildNurseTopology(300), DefaultNurseConfig(), StrategyKind::kBest);
  EXPECT_EQ(engine.EliteCount(100), 10);
  EXPECT_EQ(engine.EliteCount(300), 30);
  EXPECT_EQ(engine.EliteCount(7), 1);
}

TEST(EngineTest, SingleNurseFindsCheapestPattern) {
  const NurseInstance inst = ParseNurseInstance(
      "NURSE 1 4\nPAT 0 10000000000000\nPAT 1 01000000000000\nPAT 2 00100000000000\n"
      "PAT 3 00010000000000\nN 0 2 0 1 2 3\nC 0 0 40\nC 0 1 9\nC 0 2 3\nC 0 3 70\n"
      "D 2 2 1\nD 2 3 1\nD 0 3 1\n");
  // Shift 2 needs the nurse (pattern 2); shift 0 then stays one short.
  const NurseAdapter adapter(inst);
  const RunResult r = RunPyramid(adapter, BuildNurseTopology(40, 20), SmallConfig(3),
                                 StrategyKind::kRankSelection);
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.best_eval.violation, 1);
  EXPECT_EQ(r.best_assignment, std::vector<int>{2});
  EXPECT_EQ(r.best_value, 3);
}

TEST(EngineTest, StopsAfterPatience) {
  const NurseInstance inst = testing::TinyNurseInstance(2);
  const NurseAdapter adapter(inst);
  EngineConfig c = SmallConfig(9);
  c.max_generations = 1000;
  c.stop_patience = 5;
  PyramidEngine engine(adapter, BuildNurseTopology(40, 20), c, StrategyKind::kRandom);
  const RunResult r = engine.Run();
  EXPECT_LT(r.generations, 1000);
  EXPECT_EQ(engine.stall(), 5);
}

TEST(EngineTest, NoAssemblyStillRuns) {
  const NurseInstance inst = testing::TinyNurseInstance(5);
  const NurseAdapter adapter(inst);
  EngineConfig c = SmallConfig(4);
  c.assembly_share = 0;
  const RunResult r = RunPyramid(adapter, BuildNurseTopology(40, 20), c, StrategyKind::kPartnerChoice);
  EXPECT_GE(r.generations, 1);
}

TEST(EngineTest, JoinedSolvesOriginalEverywhere) {
  const NurseInstance inst = testing::TinyNurseInstance(5);
  const NurseAdapter adapter(inst);
  PyramidEngine engine(adapter, BuildNurseTopology(40, 20), SmallConfig(4), StrategyKind::kJoined);
  EXPECT_TRUE(engine.topology().joined);
  engine.Initialize();
  for (const SubPopulation& pop : engine.populations()) {
    ASSERT_EQ(pop.agents.front().genome.size(), static_cast<std::size_t>(inst.nurse_count()));
  }
}

TEST(EngineTest, TinyInstanceReachesOptimum) {
  const NurseInstance inst = testing::TinyNurseInstance(1);
  const NurseAdapter adapter(inst);
  const testing::ReferenceOptimum opt = testing::ReferenceNurseOptimum(inst);
  ASSERT_TRUE(opt.feasible);
  EngineConfig c = DefaultNurseConfig();
  c.max_generations = 200;
  c.seed = 11;
  const RunResult r = RunPyramid(adapter, BuildNurseTopology(300), c, StrategyKind::kRankSelection);
  EXPECT_TRUE(r.feasible);
  EXPECT_GE(r.best_value, opt.value);
}

}  // namespace
}  // namespace pyramid_ga
