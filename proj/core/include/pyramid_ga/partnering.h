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

#ifndef PYRAMID_GA_PARTNERING_H_
#define PYRAMID_GA_PARTNERING_H_

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "pyramid_ga/population.h"
#include "pyramid_ga/rng.h"

namespace pyramid_ga {

// How an assembly child picks the parent for each slot after the first.
enum class StrategyKind {
  kRankSelection,   // S
  kRandom,          // R
  kBest,            // B
  kDistributed,     // D
  kJoined,          // J
  kAttractiveness,  // A
  kPartnerChoice,   // C
};

char StrategyLetter(StrategyKind kind);
std::optional<StrategyKind> StrategyFromLetter(std::string_view letter);
std::span<const StrategyKind> AllStrategies();
inline constexpr std::string_view kStrategyLetters = "S,R,B,D,J,A,C";

// Single toroidal grid shared by every sub-population. Agent i of any
// sub-population lives in cell i mod cells().
class Torus {
 public:
  Torus(int width = 10, int height = 10);

  int width() const { return width_; }
  int height() const { return height_; }
  int cells() const { return width_ * height_; }
  int CellOf(std::size_t agent) const { return static_cast<int>(agent % static_cast<std::size_t>(cells())); }
  int CellAt(int x, int y) const;
  // The cell and its eight neighbours, with wraparound; the cell first.
  std::array<int, 9> Patch(int cell) const;
  std::array<int, 8> Neighbours(int cell) const;
  bool InPatch(int center, int cell) const;

 private:
  int width_;
  int height_;
};

// Penalized value (objective units, receiving node's measure and weight) of
// the child formed by the parents chosen so far and target agent i.
using CombineFn = std::function<double(std::size_t candidate)>;

struct PartnerContext {
  std::span<const Agent> target;  // sub-population the partner is drawn from
  Direction direction = Direction::kMinimize;
  Rng* rng = nullptr;
  const RankWheel* wheel = nullptr;  // cached wheel over `target`, optional

  // D
  Torus torus;
  int first_parent_cell = 0;

  // A and C
  CombineFn combine;
  std::optional<double>* best_known = nullptr;  // receiving node's f_best
  int candidate_count = 10;
  int max_attempts = 16;
};

struct PartnerChoice {
  std::size_t index = 0;
  std::optional<double> combined_value;  // set when `combine` was evaluated for it
  int attempts = 1;
};

PartnerChoice PartnerRankSelection(PartnerContext& ctx);
PartnerChoice PartnerRandom(PartnerContext& ctx);
PartnerChoice PartnerBest(PartnerContext& ctx);
PartnerChoice PartnerDistributed(PartnerContext& ctx);
PartnerChoice PartnerAttractiveness(PartnerContext& ctx);
PartnerChoice PartnerChoiceOfTen(PartnerContext& ctx);

// Dispatch; throws ContractError for J, which never assembles.
PartnerChoice SelectPartner(StrategyKind kind, PartnerContext& ctx);

// D: the child goes to a uniformly chosen neighbour cell of the parent's.
int PlaceChildDistributed(const Torus& torus, int parent_cell, Rng& rng);

// A: probability of accepting a pairing. 1 when f_comb is at least as good
// as f_best, otherwise f_comb / f_best (maximize) or f_best / f_comb
// (minimize). Non-positive values are shifted so the smaller of the two
// becomes 1 before the ratio is taken.
double AttractivenessAcceptance(double f_comb, double f_best, Direction direction);

}  // namespace pyramid_ga

#endif  // PYRAMID_GA_PARTNERING_H_
