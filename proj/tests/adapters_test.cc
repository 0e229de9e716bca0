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

#include "pyramid_ga/adapters.h"

#include <gtest/gtest.h>

#include <vector>

#include "pyramid_ga/errors.h"
#include "pyramid_ga/operators.h"
#include "pyramid_ga/topology.h"
#include "support/test_support.h"

namespace pyramid_ga {
namespace {

Genome Project(const Genome& full, std::span<const int> positions) {
  Genome out;
  for (int p : positions) out.push_back(full[static_cast<std::size_t>(p)]);
  return out;
}

TEST(NurseAdapterTest, ShapeAndDomains) {
  const NurseInstance inst = GenerateNurseInstance({}, 1).instance;
  const NurseAdapter adapter(inst);
  EXPECT_EQ(adapter.part_count(), 3);
  EXPECT_EQ(adapter.position_count(), 30);
  EXPECT_EQ(adapter.direction(), Direction::kMinimize);
  int total = 0;
  for (int g = 0; g < 3; ++g) {
    for (int pos : adapter.PartPositions(g)) {
      EXPECT_EQ(inst.nurses[static_cast<std::size_t>(pos)].grade, g + 1);
      ++total;
    }
  }
  EXPECT_EQ(total, 30);
  const auto domain = adapter.Domain(4);
  EXPECT_EQ(std::vector<int>(domain.begin(), domain.end()), inst.nurses[4].patterns);
}

TEST(NurseAdapterTest, EveryScopeMatchesLibraryEvaluation) {
  Rng rng(1);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const NurseInstance inst = GenerateNurseInstance({}, seed).instance;
    const NurseAdapter adapter(inst);
    for (int trial = 0; trial < 40; ++trial) {
      const Genome full = testing::RandomNurseChoice(inst, rng);
      for (PartMask parts = 1; parts < 8; ++parts) {
        const Genome g = Project(full, adapter.PositionsOf(parts));
        const NurseAssignment a = adapter.ToAssignment(parts, g);
        const Evaluation e = adapter.Evaluate(parts, Measure::kSubstitute, g);
        ASSERT_EQ(e.raw, static_cast<double>(PreferenceCost(inst, a)));
        ASSERT_EQ(e.violation, CoverViolation(inst, a));
      }
      const Evaluation e = adapter.Evaluate(0b111, Measure::kFull, full);
      const auto ref = testing::ReferenceNurseObjective(inst, full);
      ASSERT_EQ(e.raw, static_cast<double>(ref.cost));
      ASSERT_EQ(e.violation, ref.violation);
    }
  }
}

TEST(NurseAdapterTest, Contracts) {
  const NurseInstance inst = GenerateNurseInstance({}, 1).instance;
  const NurseAdapter adapter(inst);
  Rng rng(2);
  Genome full = testing::RandomNurseChoice(inst, rng);
  EXPECT_THROW(adapter.Evaluate(0b011, Measure::kFull, full), ContractError);
  EXPECT_THROW(adapter.Evaluate(0b111, Measure::kFull, Genome(3, 0)), ContractError);
  full[0] = -1;
  EXPECT_THROW(adapter.Evaluate(0b111, Measure::kFull, full), ContractError);
}

TEST(MallAdapterTest, MatchesLibraryEvaluationExactly) {
  Rng rng(3);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const MallInstance m = GenerateMallInstance({}, seed).instance;
    const MallAdapter adapter(m);
    EXPECT_EQ(adapter.direction(), Direction::kMaximize);
    for (int trial = 0; trial < 40; ++trial) {
      const Genome full = testing::RandomMallTypes(m, rng);
      for (int area = 0; area < m.area_count; ++area) {
        const PartMask parts = PartMask{1} << area;
        const Genome g = Project(full, adapter.PartPositions(area));
        const Evaluation e = adapter.Evaluate(parts, Measure::kSubstitute, g);
        ASSERT_EQ(e.raw, AreaSubRent(m, adapter.ToAssignment(parts, g)));
        ASSERT_EQ(e.violation, 0);
      }
      const MallAssignment a = FullMallAssignment(m, full);
      const Evaluation e = adapter.Evaluate(adapter.full_mask(), Measure::kFull, full);
      ASSERT_EQ(e.raw, MallRent(m, a));
      ASSERT_EQ(e.violation, MallViolation(m, a));
    }
  }
}

TEST(MallAdapterTest, ManyAreasUseUncachedLayout) {
  MallGenParams p;
  p.area_count = 20;
  p.location_count = 120;
  const MallInstance m = GenerateMallInstance(p, 5).instance;
  ASSERT_GT(m.area_count, MallAdapter::kCachedMaskAreas);
  const MallAdapter adapter(m);
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Genome full = testing::RandomMallTypes(m, rng);
    const Evaluation e = adapter.Evaluate(adapter.full_mask(), Measure::kFull, full);
    ASSERT_EQ(e.raw, MallRent(m, FullMallAssignment(m, full)));
    ASSERT_EQ(e.violation, MallViolation(m, FullMallAssignment(m, full)));
    const int area = 17;
    const Genome g = Project(full, adapter.PartPositions(area));
    ASSERT_EQ(adapter.Evaluate(PartMask{1} << area, Measure::kSubstitute, g).raw,
              AreaSubRent(m, adapter.ToAssignment(PartMask{1} << area, g)));
  }
}

TEST(MallAdapterTest, Contracts) {
  const MallInstance m = testing::TinyMallInstance(2);
  const MallAdapter adapter(m);
  Genome full(static_cast<std::size_t>(m.location_count), 0);
  EXPECT_NO_THROW(adapter.Evaluate(adapter.full_mask(), Measure::kFull, full));
  EXPECT_THROW(adapter.Evaluate(0b01, Measure::kFull, full), ContractError);
  EXPECT_THROW(adapter.Evaluate(0b11, Measure::kSubstitute, full), ContractError);
  full[0] = m.type_count;
  EXPECT_THROW(adapter.Evaluate(adapter.full_mask(), Measure::kFull, full), ContractError);
}

// Splitting a full assignment over the leaves and assembling it back at the
// top node evaluates the same as the assignment itself.
TEST(AssemblyEvaluationTest, NurseAssembledEqualsDirect) {
  Rng rng(5);
  const NurseInstance inst = GenerateNurseInstance({}, 6).instance;
  const NurseAdapter adapter(inst);
  const PyramidTopology t = BuildNurseTopology(300);
  const PyramidLayout layout(t, adapter);
  for (int trial = 0; trial < 200; ++trial) {
    const Genome full = testing::RandomNurseChoice(inst, rng);
    const auto& ways = t.nodes[static_cast<std::size_t>(t.top)].decompositions;
    const auto& slots = ways[rng.UniformIndex(ways.size())];
    std::vector<Genome> parts;
    for (int slot : slots) parts.push_back(Project(full, layout.positions(slot)));
    const Genome assembled = Assemble(t, layout, t.top, slots, parts);
    ASSERT_EQ(adapter.Evaluate(0b111, Measure::kFull, assembled),
              adapter.Evaluate(0b111, Measure::kFull, full));
  }
}

TEST(AssemblyEvaluationTest, MallAssembledEqualsDirect) {
  Rng rng(6);
  const MallInstance m = GenerateMallInstance({}, 6).instance;
  const MallAdapter adapter(m);
  const PyramidTopology t = BuildMallTopology(500, m.area_count);
  const PyramidLayout layout(t, adapter);
  for (int trial = 0; trial < 200; ++trial) {
    const Genome full = testing::RandomMallTypes(m, rng);
    const auto& slots = t.nodes[static_cast<std::size_t>(t.top)].decompositions[0];
    std::vector<Genome> parts;
    for (int slot : slots) parts.push_back(Project(full, layout.positions(slot)));
    const Genome assembled = Assemble(t, layout, t.top, slots, parts);
    ASSERT_EQ(adapter.Evaluate(adapter.full_mask(), Measure::kFull, assembled),
              adapter.Evaluate(adapter.full_mask(), Measure::kFull, full));
  }
}

}  // namespace
}  // namespace pyramid_ga
