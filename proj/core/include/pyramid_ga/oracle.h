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

#ifndef PYRAMID_GA_ORACLE_H_
#define PYRAMID_GA_ORACLE_H_

#include <cstdint>
#include <vector>

#include "pyramid_ga/mall_problem.h"
#include "pyramid_ga/nurse_problem.h"

namespace pyramid_ga {

// Exhaustive optimum of a tiny instance. Used to pin test fixtures.
struct OracleResult {
  bool feasible = false;
  double best_value = 0;         // cost (nurse) or rent (mall) of the optimum
  std::vector<int> assignment;   // pattern or shop type per position
  std::uint64_t enumerated = 0;  // assignments visited
};

inline constexpr std::uint64_t kDefaultOracleLimit = 20'000'000;

// Both throw ValidationError when the search space exceeds `limit`.
// Ties keep the first assignment in odometer order (position 0 slowest).
OracleResult NurseOracle(const NurseInstance& instance,
                         std::uint64_t limit = kDefaultOracleLimit);
OracleResult MallOracle(const MallInstance& instance, std::uint64_t limit = kDefaultOracleLimit);

}  // namespace pyramid_ga

#endif  // PYRAMID_GA_ORACLE_H_
