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

#ifndef PYRAMID_GA_MALL_PROBLEM_H_
#define PYRAMID_GA_MALL_PROBLEM_H_

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "pyramid_ga/common.h"

namespace pyramid_ga {

// Mall tenant selection: every location gets a shop type; same-type
// locations in one area merge into shops of size 1-3; the objective is the
// yearly rent (thousands of pounds), maximized under per-type count bounds
// and mall-wide caps on the number of shops of each size.

enum class SizeClass : int { kSmall = 1, kMedium = 2, kLarge = 3 };

struct TypeBounds {
  int min_count = 0;
  int ideal_count = 0;
  int max_count = 0;

  bool operator==(const TypeBounds&) const = default;
};

struct MallInstance {
  int location_count = 0;
  int area_count = 0;
  int type_count = 0;
  int group_count = 0;
  std::vector<int> area_of;                // per location
  std::vector<std::vector<int>> groups_of;  // per type, ascending
  std::vector<TypeBounds> bounds;          // per type, counted in shops
  int max_small = 0;
  int max_medium = 0;
  int max_large = 0;
  std::vector<double> fixed_rent;      // [type * area_count + area]
  std::vector<double> attractiveness;  // [area * type_count + type]
  std::vector<double> count_slope;     // per type
  double synergy_bonus = 0;

  double FixedRent(int type, int area) const {
    return fixed_rent[static_cast<std::size_t>(type * area_count + area)];
  }
  double Attractiveness(int area, int type) const {
    return attractiveness[static_cast<std::size_t>(area * type_count + type)];
  }
  bool TypesShareGroup(int a, int b) const;
  // Locations of one area in ascending index order; consecutive entries are
  // neighbours for the synergy term.
  std::vector<int> LocationsInArea(int area) const;
  int SizeCap(SizeClass size) const;

  bool operator==(const MallInstance&) const = default;
};

void ValidateMallInstance(const MallInstance& instance);

MallInstance ParseMallInstance(std::string_view text);
MallInstance ParseMallInstance(std::istream& in);
std::string RenderMallInstance(const MallInstance& instance);

// Shop type per location for the areas in `areas`; kUnassigned elsewhere.
struct MallAssignment {
  std::vector<int> areas;  // scope, ascending
  std::vector<int> shop_type;

  bool operator==(const MallAssignment&) const = default;
};

MallAssignment FullMallAssignment(const MallInstance& instance, std::vector<int> shop_type);
void CheckMallAssignment(const MallInstance& instance, const MallAssignment& a);

struct Shop {
  int type = 0;
  int area = 0;
  SizeClass size = SizeClass::kSmall;

  bool operator==(const Shop&) const = default;
};

// Per (area, type) with n locations: n / 3 large shops, then one medium when
// n % 3 == 2 or one small when n % 3 == 1. Ordered by area, then type.
std::vector<Shop> DeriveShops(const MallInstance& instance, const MallAssignment& a);

// Full-scope rent: per-shop fixed and size-scaled attractiveness rent, minus
// the per-type deviation of the shop count from ideal, plus the synergy bonus
// for every neighbouring location pair whose types share a group.
double MallRent(const MallInstance& instance, const MallAssignment& a);

// The same formula restricted to one area. The count term only covers types
// present in the area, measured against the in-area shop count.
double AreaSubRent(const MallInstance& instance, const MallAssignment& a);

// Shops short of min / over max per type, plus shops over each size cap.
std::int64_t MallViolation(const MallInstance& instance, const MallAssignment& a);

struct MallGenParams {
  int location_count = 100;
  int area_count = 5;
  int type_count = 30;
  int group_count = 8;
  double tightness = 0.3;
  // Clamp type_count into the 20..50 range of the benchmark family. Tests
  // that need toy instances switch it off.
  bool standard_type_range = true;
};

struct GeneratedMallInstance {
  MallInstance instance;
  MallAssignment planted;  // violation 0 by construction
  std::vector<std::string> clamped;
};

GeneratedMallInstance GenerateMallInstance(MallGenParams params, std::uint64_t seed);

}  // namespace pyramid_ga

#endif  // PYRAMID_GA_MALL_PROBLEM_H_
