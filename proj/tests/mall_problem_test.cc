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

#include "pyramid_ga/mall_problem.h"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "pyramid_ga/errors.h"
#include "pyramid_ga/rng.h"
#include "support/test_support.h"

namespace pyramid_ga {
namespace {

// One area, three locations, two types sharing group 0.
constexpr char kSmallMall[] =
    "MALL 3 1 2 1\n"
    "A 0 0\nA 1 0\nA 2 0\n"
    "G 0 0\nG 1 0\n"
    "T 0 0 1 3\nT 1 0 3 3\n"
    "F 0 0 10\nF 1 0 5\n"
    "ATT 0 0 2\nATT 0 1 1\n"
    "CS 1 2\n"
    "SYN 3\n";

MallInstance SameTypeMall(int locations) {
  std::string text = "MALL " + std::to_string(locations) + " 1 1 1\n";
  for (int i = 0; i < locations; ++i) text += "A " + std::to_string(i) + " 0\n";
  text += "G 0 0\nT 0 0 0 10\nSYN 0\n";
  return ParseMallInstance(text);
}

TEST(MallShopsTest, FiveLocationsGiveLargeAndMedium) {
  const MallInstance m = SameTypeMall(5);
  const auto shops = DeriveShops(m, FullMallAssignment(m, {0, 0, 0, 0, 0}));
  ASSERT_EQ(shops.size(), 2u);
  EXPECT_EQ(shops[0].size, SizeClass::kLarge);
  EXPECT_EQ(shops[1].size, SizeClass::kMedium);
}

TEST(MallShopsTest, FourLocationsGiveLargeAndSmall) {
  const MallInstance m = SameTypeMall(4);
  const auto shops = DeriveShops(m, FullMallAssignment(m, {0, 0, 0, 0}));
  ASSERT_EQ(shops.size(), 2u);
  EXPECT_EQ(shops[0].size, SizeClass::kLarge);
  EXPECT_EQ(shops[1].size, SizeClass::kSmall);
}

TEST(MallShopsTest, SixLocationsGiveTwoLarge) {
  const MallInstance m = SameTypeMall(6);
  const auto shops = DeriveShops(m, FullMallAssignment(m, std::vector<int>(6, 0)));
  ASSERT_EQ(shops.size(), 2u);
  EXPECT_EQ(shops[0].size, SizeClass::kLarge);
  EXPECT_EQ(shops[1].size, SizeClass::kLarge);
}

TEST(MallRentTest, HandComputedWithSynergy) {
  const MallInstance m = ParseMallInstance(kSmallMall);
  // Type 0 medium: 10 + 2 * 2; type 1 small: 5 + 1; type 1 is two shops
  // short of ideal at slope 2; both neighbour pairs share group 0.
  EXPECT_DOUBLE_EQ(MallRent(m, FullMallAssignment(m, {0, 0, 1})), 14 + 6 - 4 + 6);
  EXPECT_DOUBLE_EQ(testing::ReferenceMallRent(m, {0, 0, 1}), 22);
}

TEST(MallRentTest, NoSynergyAcrossGroups) {
  MallInstance m = ParseMallInstance(kSmallMall);
  m.group_count = 2;
  m.groups_of[1] = {1};
  // Pair (0,1) is type 0/0, pair (1,2) is type 0/1 in different groups.
  EXPECT_DOUBLE_EQ(MallRent(m, FullMallAssignment(m, {0, 0, 1})), 14 + 6 - 4 + 3);
}

TEST(MallRentTest, SingleAreaSubRentMatchesWhenAllTypesPresent) {
  const MallInstance m = ParseMallInstance(kSmallMall);
  MallAssignment a = FullMallAssignment(m, {0, 1, 1});
  EXPECT_DOUBLE_EQ(AreaSubRent(m, a), MallRent(m, a));
  // An absent type adds no count term to the sub-rent.
  a = FullMallAssignment(m, {0, 0, 0});
  EXPECT_DOUBLE_EQ(AreaSubRent(m, a) - 3 * 2, MallRent(m, a));
}

TEST(MallViolationTest, CountBoundsAndSizeCaps) {
  MallInstance m = ParseMallInstance(kSmallMall);
  EXPECT_EQ(MallViolation(m, FullMallAssignment(m, {0, 0, 1})), 0);
  m.bounds[1] = {1, 1, 1};
  EXPECT_EQ(MallViolation(m, FullMallAssignment(m, {0, 0, 0})), 1);  // type 1 missing
  m.bounds[0] = {0, 0, 0};
  EXPECT_EQ(MallViolation(m, FullMallAssignment(m, {0, 0, 0})), 2);  // plus type 0 over
  m.bounds = {{0, 0, 3}, {0, 0, 3}};
  m.max_small = 0;
  EXPECT_EQ(MallViolation(m, FullMallAssignment(m, {0, 1, 0})), 1);  // type 1 is small
  m.max_large = 0;
  EXPECT_EQ(MallViolation(m, FullMallAssignment(m, {0, 0, 0})), 1);
}

TEST(MallAssignmentTest, ContractChecks) {
  const MallInstance m = testing::TinyMallInstance(1);
  std::vector<int> types(static_cast<std::size_t>(m.location_count), 0);
  EXPECT_NO_THROW(MallRent(m, FullMallAssignment(m, types)));
  types[0] = m.type_count;
  EXPECT_THROW(MallRent(m, FullMallAssignment(m, types)), ContractError);
  EXPECT_THROW(MallRent(m, FullMallAssignment(m, {0})), ContractError);
  // Partial scope: locations outside must be unassigned.
  MallAssignment part{{0}, std::vector<int>(static_cast<std::size_t>(m.location_count), 0)};
  EXPECT_THROW(AreaSubRent(m, part), ContractError);
  for (int loc = 0; loc < m.location_count; ++loc) {
    if (m.area_of[static_cast<std::size_t>(loc)] != 0) part.shop_type[static_cast<std::size_t>(loc)] = kUnassigned;
  }
  EXPECT_NO_THROW(AreaSubRent(m, part));
  EXPECT_THROW(MallViolation(m, part), ContractError);
}

TEST(MallParseTest, Errors) {
  EXPECT_THROW(ParseMallInstance(""), ParseError);
  EXPECT_THROW(ParseMallInstance("MALL 1 1 1 1\nA 0 0\nG 0 0\nT 0 2 1 3\n"), ValidationError);
  EXPECT_THROW(ParseMallInstance("MALL 1 1 1 1\nA 0 0\nG 0 0\nT 0 0 0 1\nF 0 0 -1\n"),
               ValidationError);
  EXPECT_THROW(ParseMallInstance("MALL 2 1 1 1\nA 0 0\nG 0 0\nT 0 0 0 1\n"), ValidationError);
  try {
    ParseMallInstance("MALL 1 1 1 1\nA 0 0\nG 0 0\nT 0 0 0 1\nZZ 1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5);
  }
}

TEST(MallParseTest, GeneratedInstanceRoundTrips) {
  const MallInstance m = GenerateMallInstance({}, 4).instance;
  EXPECT_EQ(ParseMallInstance(RenderMallInstance(m)), m);
}

TEST(MallGeneratorTest, DimensionsAndPlantedFeasibility) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (double t : {0.0, 0.3, 0.8}) {
      MallGenParams p;
      p.tightness = t;
      const GeneratedMallInstance g = GenerateMallInstance(p, seed);
      EXPECT_EQ(g.instance.location_count, 100);
      EXPECT_EQ(g.instance.area_count, 5);
      EXPECT_GE(g.instance.type_count, 20);
      EXPECT_LE(g.instance.type_count, 50);
      EXPECT_EQ(MallViolation(g.instance, g.planted), 0) << "seed " << seed;
    }
  }
}

TEST(MallGeneratorTest, DeterministicAndClamped) {
  EXPECT_EQ(GenerateMallInstance({}, 9).instance, GenerateMallInstance({}, 9).instance);
  EXPECT_NE(GenerateMallInstance({}, 9).instance, GenerateMallInstance({}, 10).instance);
  MallGenParams p;
  p.type_count = 5;
  EXPECT_FALSE(GenerateMallInstance(p, 1).clamped.empty());
  EXPECT_EQ(GenerateMallInstance(p, 1).instance.type_count, 20);
  p.standard_type_range = false;
  EXPECT_TRUE(GenerateMallInstance(p, 1).clamped.empty());
}

TEST(MallPropertyTest, MatchesReferenceImplementation) {
  Rng rng(31);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const MallInstance m = GenerateMallInstance({}, seed).instance;
    for (int trial = 0; trial < 50; ++trial) {
      const auto types = testing::RandomMallTypes(m, rng);
      const MallAssignment a = FullMallAssignment(m, types);
      ASSERT_NEAR(MallRent(m, a), testing::ReferenceMallRent(m, types), 1e-9);
      ASSERT_EQ(MallViolation(m, a), testing::ReferenceMallViolation(m, types));
    }
  }
}

TEST(MallPropertyTest, AreaSubRentsSumToRentWithoutCountTerm) {
  Rng rng(37);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    MallInstance m = GenerateMallInstance({}, seed).instance;
    std::fill(m.count_slope.begin(), m.count_slope.end(), 0.0);
    for (int trial = 0; trial < 30; ++trial) {
      const auto types = testing::RandomMallTypes(m, rng);
      double sum = 0;
      for (int area = 0; area < m.area_count; ++area) {
        MallAssignment part{{area}, types};
        for (int loc = 0; loc < m.location_count; ++loc) {
          if (m.area_of[static_cast<std::size_t>(loc)] != area) {
            part.shop_type[static_cast<std::size_t>(loc)] = kUnassigned;
          }
        }
        sum += AreaSubRent(m, part);
      }
      ASSERT_NEAR(sum, MallRent(m, FullMallAssignment(m, types)), 1e-9);
    }
  }
}

TEST(MallPropertyTest, LooseningBoundsNeverAddsViolation) {
  Rng rng(41);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const MallInstance m = GenerateMallInstance({}, seed).instance;
    MallInstance loose = m;
    for (TypeBounds& b : loose.bounds) {
      b.min_count = std::max(0, b.min_count - 1);
      ++b.max_count;
    }
    ++loose.max_small;
    for (int trial = 0; trial < 30; ++trial) {
      const auto types = testing::RandomMallTypes(m, rng);
      ASSERT_LE(MallViolation(loose, FullMallAssignment(loose, types)),
                MallViolation(m, FullMallAssignment(m, types)));
    }
  }
}

}  // namespace
}  // namespace pyramid_ga
