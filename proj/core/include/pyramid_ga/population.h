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

#ifndef PYRAMID_GA_POPULATION_H_
#define PYRAMID_GA_POPULATION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pyramid_ga/problem.h"
#include "pyramid_ga/rng.h"

namespace pyramid_ga {

using Genome = std::vector<int>;

struct Agent {
  Genome genome;
  Evaluation eval;
  // Direction-adjusted penalized value: sign * raw + weight * violation.
  // Lower is better for both directions.
  double score = 0;
};

// Penalized value in objective units: raw + w*v when minimizing, raw - w*v
// when maximizing.
double PenalizedValue(const Evaluation& e, double weight, Direction direction);
double Score(const Evaluation& e, double weight, Direction direction);

// True when a is strictly better than b on (violation, direction-adjusted raw).
bool LexicographicallyBetter(const Evaluation& a, const Evaluation& b, Direction direction);

struct PenaltyState {
  double weight = 1.0;
  double growth = 2.0;        // g > 1
  double min_weight = 1.0;    // w_min > 0
  double max_weight = 1e12;   // keeps w finite while no agent is feasible

  bool operator==(const PenaltyState&) const = default;
};

// Adaptive weight update from the gap between the best agent (by penalized
// value under the current weight) and the best feasible agent:
//  - best agent feasible:        w <- max(w_min, w / g)
//  - feasible agent exists:      w <- max(w_min, |raw(best) - raw(best feasible)|
//                                              / max(1, violation(best)) + w_min)
//  - no feasible agent:          w <- min(w_max, w * g)
PenaltyState UpdatePenalty(const PenaltyState& state, std::span<const Agent> agents,
                           Direction direction);

struct SubPopulation {
  int node = 0;
  std::vector<Agent> agents;
  PenaltyState penalty;
};

// Recomputes every agent's score under the sub-population's current weight.
void Rescore(SubPopulation& population, Direction direction);

// Index of the best agent by score; ties go to the lower index.
std::size_t BestByScore(std::span<const Agent> agents);

// Roulette wheel over fitness ranks: the best agent has rank N, the worst
// rank 1, ties broken in favour of the lower index; P(i) = rank_i / sum.
class RankWheel {
 public:
  explicit RankWheel(std::span<const Agent> agents);

  std::size_t Draw(Rng& rng) const;
  std::size_t size() const { return order_.size(); }
  // Rank of agent i (N = best).
  std::size_t RankOf(std::size_t agent) const { return rank_of_[agent]; }
  std::uint64_t total_weight() const { return cumulative_.empty() ? 0 : cumulative_.back(); }

 private:
  std::vector<std::size_t> order_;       // best first
  std::vector<std::size_t> rank_of_;
  std::vector<std::uint64_t> cumulative_;  // over order_
};

std::size_t RankRoulette(std::span<const Agent> agents, Rng& rng);

}  // namespace pyramid_ga

#endif  // PYRAMID_GA_POPULATION_H_
