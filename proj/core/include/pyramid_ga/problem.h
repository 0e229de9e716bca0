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

#ifndef PYRAMID_GA_PROBLEM_H_
#define PYRAMID_GA_PROBLEM_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pyramid_ga/common.h"

namespace pyramid_ga {

// Bit p set = part p (a nurse grade, a mall area) belongs to the set.
using PartMask = std::uint32_t;

// Which fitness a node optimizes: the substitute measure of its parts, or
// the original objective over the whole string.
enum class Measure { kSubstitute, kFull };

struct Evaluation {
  double raw = 0;               // objective units
  std::int64_t violation = 0;   // constraint units, 0 = feasible

  bool feasible() const { return violation == 0; }
  bool operator==(const Evaluation&) const = default;
};

// What the engine needs from a multiple-choice assignment problem. A genome
// for part set P holds one value per position of P, in ascending global
// position order.
class ProblemAdapter {
 public:
  virtual ~ProblemAdapter() = default;

  virtual std::string name() const = 0;
  virtual int part_count() const = 0;
  virtual int position_count() const = 0;
  // Global positions of one part, ascending.
  virtual std::span<const int> PartPositions(int part) const = 0;
  // Admissible values of one position; never empty.
  virtual std::span<const int> Domain(int position) const = 0;
  virtual Direction direction() const = 0;
  // Must be safe to call concurrently.
  virtual Evaluation Evaluate(PartMask parts, Measure measure,
                              std::span<const int> genome) const = 0;

  PartMask full_mask() const;
  // Union of the parts' positions, ascending.
  std::vector<int> PositionsOf(PartMask parts) const;
};

}  // namespace pyramid_ga

#endif  // PYRAMID_GA_PROBLEM_H_
