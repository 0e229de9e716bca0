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

#include "pyramid_ga/population.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pyramid_ga/errors.h"

namespace pyramid_ga {

double PenalizedValue(const Evaluation& e, double weight, Direction direction) {
  const double penalty = weight * static_cast<double>(e.violation);
  return direction == Direction::kMinimize ? e.raw + penalty : e.raw - penalty;
}

double Score(const Evaluation& e, double weight, Direction direction) {
  return DirectionSign(direction) * e.raw + weight * static_cast<double>(e.violation);
}

bool LexicographicallyBetter(const Evaluation& a, const Evaluation& b, Direction direction) {
  if (a.violation != b.violation) return a.violation < b.violation;
  return DirectionSign(direction) * a.raw < DirectionSign(direction) * b.raw;
}

PenaltyState UpdatePenalty(const PenaltyState& state, std::span<const Agent> agents,
                           Direction direction) {
  PenaltyState next = state;
  if (agents.empty()) return next;
  const Agent& best = agents[BestByScore(agents)];
  const Agent* best_feasible = nullptr;
  for (const Agent& a : agents) {
    if (!a.eval.feasible()) continue;
    if (best_feasible == nullptr ||
        DirectionSign(direction) * a.eval.raw < DirectionSign(direction) * best_feasible->eval.raw) {
      best_feasible = &a;
    }
  }
  if (best_feasible == nullptr) {
    next.weight = std::min(state.max_weight, state.weight * state.growth);
  } else if (best.eval.feasible()) {
    next.weight = std::max(state.min_weight, state.weight / state.growth);
  } else {
    const double gap = std::abs(best.eval.raw - best_feasible->eval.raw);
    const double per_unit = gap / std::max<double>(1.0, static_cast<double>(best.eval.violation));
    next.weight = std::min(state.max_weight, std::max(state.min_weight, per_unit + state.min_weight));
  }
  return next;
}

void Rescore(SubPopulation& population, Direction direction) {
  for (Agent& a : population.agents) a.score = Score(a.eval, population.penalty.weight, direction);
}

std::size_t BestByScore(std::span<const Agent> agents) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < agents.size(); ++i) {
    if (agents[i].score < agents[best].score) best = i;
  }
  return best;
}

RankWheel::RankWheel(std::span<const Agent> agents)
    : order_(agents.size()), rank_of_(agents.size()), cumulative_(agents.size()) {
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
    return agents[a].score < agents[b].score;
  });
  const std::size_t n = agents.size();
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t rank = n - i;
    rank_of_[order_[i]] = rank;
    running += rank;
    cumulative_[i] = running;
  }
}

std::size_t RankWheel::Draw(Rng& rng) const {
  if (order_.empty()) throw ContractError("rank roulette over an empty population");
  const std::uint64_t r = rng.UniformIndex(static_cast<std::size_t>(total_weight()));
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
  return order_[static_cast<std::size_t>(it - cumulative_.begin())];
}

std::size_t RankRoulette(std::span<const Agent> agents, Rng& rng) {
  return RankWheel(agents).Draw(rng);
}

}  // namespace pyramid_ga
