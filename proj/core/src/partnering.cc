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

#include "pyramid_ga/partnering.h"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "pyramid_ga/errors.h"

namespace pyramid_ga {

namespace {

constexpr std::array<StrategyKind, 7> kAll = {
    StrategyKind::kRankSelection, StrategyKind::kRandom,         StrategyKind::kBest,
    StrategyKind::kDistributed,   StrategyKind::kJoined,         StrategyKind::kAttractiveness,
    StrategyKind::kPartnerChoice,
};

void RequireTarget(const PartnerContext& ctx) {
  if (ctx.target.empty()) throw ContractError("partner target population is empty");
  if (ctx.rng == nullptr) throw ContractError("partner context has no random stream");
}

bool AtLeastAsGood(double a, double b, Direction direction) {
  return direction == Direction::kMinimize ? a <= b : a >= b;
}

}  // namespace

char StrategyLetter(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kRankSelection: return 'S';
    case StrategyKind::kRandom: return 'R';
    case StrategyKind::kBest: return 'B';
    case StrategyKind::kDistributed: return 'D';
    case StrategyKind::kJoined: return 'J';
    case StrategyKind::kAttractiveness: return 'A';
    case StrategyKind::kPartnerChoice: return 'C';
  }
  return '?';
}

std::optional<StrategyKind> StrategyFromLetter(std::string_view letter) {
  if (letter.size() != 1) return std::nullopt;
  for (StrategyKind kind : kAll) {
    if (StrategyLetter(kind) == letter[0]) return kind;
  }
  return std::nullopt;
}

std::span<const StrategyKind> AllStrategies() { return kAll; }

Torus::Torus(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) throw ContractError("torus dimensions must be positive");
}

int Torus::CellAt(int x, int y) const {
  x = ((x % width_) + width_) % width_;
  y = ((y % height_) + height_) % height_;
  return y * width_ + x;
}

std::array<int, 9> Torus::Patch(int cell) const {
  std::array<int, 9> out{};
  out[0] = cell;
  std::array<int, 8> n = Neighbours(cell);
  std::copy(n.begin(), n.end(), out.begin() + 1);
  return out;
}

std::array<int, 8> Torus::Neighbours(int cell) const {
  const int x = cell % width_;
  const int y = cell / width_;
  std::array<int, 8> out{};
  std::size_t i = 0;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      out[i++] = CellAt(x + dx, y + dy);
    }
  }
  return out;
}

bool Torus::InPatch(int center, int cell) const {
  const int dx = std::abs(center % width_ - cell % width_);
  const int dy = std::abs(center / width_ - cell / width_);
  return std::min(dx, width_ - dx) <= 1 && std::min(dy, height_ - dy) <= 1;
}

PartnerChoice PartnerRankSelection(PartnerContext& ctx) {
  RequireTarget(ctx);
  const std::size_t index = ctx.wheel != nullptr ? ctx.wheel->Draw(*ctx.rng)
                                                 : RankRoulette(ctx.target, *ctx.rng);
  return {index, std::nullopt, 1};
}

PartnerChoice PartnerRandom(PartnerContext& ctx) {
  RequireTarget(ctx);
  return {ctx.rng->UniformIndex(ctx.target.size()), std::nullopt, 1};
}

PartnerChoice PartnerBest(PartnerContext& ctx) {
  RequireTarget(ctx);
  return {BestByScore(ctx.target), std::nullopt, 1};
}

PartnerChoice PartnerDistributed(PartnerContext& ctx) {
  RequireTarget(ctx);
  std::vector<std::size_t> local;
  for (std::size_t i = 0; i < ctx.target.size(); ++i) {
    if (ctx.torus.InPatch(ctx.first_parent_cell, ctx.torus.CellOf(i))) local.push_back(i);
  }
  // Only a population smaller than the grid can leave the patch empty.
  if (local.empty()) return {ctx.rng->UniformIndex(ctx.target.size()), std::nullopt, 1};
  return {local[ctx.rng->UniformIndex(local.size())], std::nullopt, 1};
}

double AttractivenessAcceptance(double f_comb, double f_best, Direction direction) {
  if (AtLeastAsGood(f_comb, f_best, direction)) return 1.0;
  const double low = std::min(f_comb, f_best);
  if (low <= 0) {
    const double shift = 1.0 - low;
    f_comb += shift;
    f_best += shift;
  }
  return direction == Direction::kMaximize ? f_comb / f_best : f_best / f_comb;
}

PartnerChoice PartnerAttractiveness(PartnerContext& ctx) {
  RequireTarget(ctx);
  if (!ctx.combine) throw ContractError("strategy A needs a combination evaluator");
  std::optional<double> local_best;
  std::optional<double>& best = ctx.best_known != nullptr ? *ctx.best_known : local_best;
  const int attempts = std::max(1, ctx.max_attempts);
  PartnerChoice choice;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    choice = PartnerRankSelection(ctx);
    const double value = ctx.combine(choice.index);
    choice.combined_value = value;
    choice.attempts = attempt;
    if (!best.has_value()) best = value;
    const double p = AttractivenessAcceptance(value, *best, ctx.direction);
    if (AtLeastAsGood(value, *best, ctx.direction)) best = value;
    if (p >= 1.0 || ctx.rng->Bernoulli(p) || attempt == attempts) return choice;
  }
  return choice;
}

PartnerChoice PartnerChoiceOfTen(PartnerContext& ctx) {
  RequireTarget(ctx);
  if (!ctx.combine) throw ContractError("strategy C needs a combination evaluator");
  const std::size_t n = ctx.target.size();
  const auto k = static_cast<std::size_t>(std::max(1, ctx.candidate_count));
  std::vector<std::size_t> pool;
  if (n >= k) {
    // k distinct agents (Floyd's sampling).
    std::vector<bool> taken(n, false);
    for (std::size_t j = n - k; j < n; ++j) {
      std::size_t t = ctx.rng->UniformIndex(j + 1);
      if (taken[t]) t = j;
      taken[t] = true;
      pool.push_back(t);
    }
  } else {
    for (std::size_t i = 0; i < k; ++i) pool.push_back(ctx.rng->UniformIndex(n));
  }
  PartnerChoice best;
  bool have = false;
  const double sign = DirectionSign(ctx.direction);
  for (std::size_t candidate : pool) {
    const double value = ctx.combine(candidate);
    if (!have || sign * value < sign * *best.combined_value ||
        (value == *best.combined_value && candidate < best.index)) {
      best = {candidate, value, static_cast<int>(pool.size())};
      have = true;
    }
  }
  return best;
}

PartnerChoice SelectPartner(StrategyKind kind, PartnerContext& ctx) {
  switch (kind) {
    case StrategyKind::kRankSelection: return PartnerRankSelection(ctx);
    case StrategyKind::kRandom: return PartnerRandom(ctx);
    case StrategyKind::kBest: return PartnerBest(ctx);
    case StrategyKind::kDistributed: return PartnerDistributed(ctx);
    case StrategyKind::kAttractiveness: return PartnerAttractiveness(ctx);
    case StrategyKind::kPartnerChoice: return PartnerChoiceOfTen(ctx);
    case StrategyKind::kJoined: break;
  }
  throw ContractError("strategy J joins all parts and never selects assembly partners");
}

int PlaceChildDistributed(const Torus& torus, int parent_cell, Rng& rng) {
  return torus.Neighbours(parent_cell)[rng.UniformIndex(8)];
}

}  // namespace pyramid_ga
