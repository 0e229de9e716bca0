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

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "pyramid_ga/errors.h"

namespace pyramid_ga {

PartMask ProblemAdapter::full_mask() const {
  const int n = part_count();
  return n >= 32 ? ~PartMask{0} : (PartMask{1} << n) - 1;
}

std::vector<int> ProblemAdapter::PositionsOf(PartMask parts) const {
  std::vector<int> out;
  for (int p = 0; p < part_count(); ++p) {
    if (!((parts >> p) & 1u)) continue;
    std::span<const int> positions = PartPositions(p);
    out.insert(out.end(), positions.begin(), positions.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Writes node-genome values onto a full-length vector at the mask's positions.
std::vector<int> Spread(const ProblemAdapter& problem, PartMask parts, std::span<const int> genome) {
  std::vector<int> full(static_cast<std::size_t>(problem.position_count()), kUnassigned);
  std::vector<int> positions = problem.PositionsOf(parts);
  if (positions.size() != genome.size()) {
    throw ContractError("genome length does not match its part set");
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    full[static_cast<std::size_t>(positions[i])] = genome[i];
  }
  return full;
}

}  // namespace

NurseAdapter::NurseAdapter(const NurseInstance& instance)
    : instance_(&instance), part_positions_(kGradeCount) {
  for (int i = 0; i < instance.nurse_count(); ++i) {
    part_positions_[static_cast<std::size_t>(instance.nurses[static_cast<std::size_t>(i)].grade - 1)]
        .push_back(i);
  }
  const auto patterns = static_cast<std::size_t>(instance.pattern_count());
  cost_table_.assign(static_cast<std::size_t>(instance.nurse_count()) * patterns, -1);
  for (std::size_t i = 0; i < instance.nurses.size(); ++i) {
    const Nurse& n = instance.nurses[i];
    for (std::size_t j = 0; j < n.patterns.size(); ++j) {
      cost_table_[i * patterns + static_cast<std::size_t>(n.patterns[j])] = n.costs[j];
    }
  }
  for (unsigned mask = 1; mask < scopes_.size(); ++mask) {
    ScopeData& scope = scopes_[mask];
    scope.nurse = PositionsOf(mask);
    for (int nurse : scope.nurse) {
      scope.grade.push_back(instance.nurses[static_cast<std::size_t>(nurse)].grade - 1);
    }
    for (int k = 0; k < kShiftCount; ++k) {
      for (int s = 1; s <= kGradeCount; ++s) {
        scope.demand[static_cast<std::size_t>(k)][static_cast<std::size_t>(s - 1)] =
            ScopedDemand(instance, GradeSet::FromMask(mask), k, s);
      }
    }
  }
}

std::span<const int> NurseAdapter::PartPositions(int part) const {
  return part_positions_.at(static_cast<std::size_t>(part));
}

std::span<const int> NurseAdapter::Domain(int position) const {
  return instance_->nurses.at(static_cast<std::size_t>(position)).patterns;
}

NurseAssignment NurseAdapter::ToAssignment(PartMask parts, std::span<const int> genome) const {
  return NurseAssignment{GradeSet::FromMask(parts), Spread(*this, parts, genome)};
}

// Same result as NurseRawObjective on the spread assignment.
Evaluation NurseAdapter::Evaluate(PartMask parts, Measure measure, std::span<const int> genome) const {
  if (measure == Measure::kFull && parts != full_mask()) {
    throw ContractError("the original nurse objective needs every grade");
  }
  if (parts == 0 || parts >= scopes_.size()) throw ContractError("invalid grade set");
  const ScopeData& scope = scopes_[parts];
  if (genome.size() != scope.nurse.size()) {
    throw ContractError("genome length does not match its part set");
  }
  const int pattern_count = instance_->pattern_count();
  std::array<std::array<int, kGradeCount>, kShiftCount> on_shift{};
  std::int64_t cost = 0;
  for (std::size_t i = 0; i < genome.size(); ++i) {
    const int p = genome[i];
    const int c = p < 0 || p >= pattern_count
                      ? -1
                      : cost_table_[static_cast<std::size_t>(scope.nurse[i]) *
                                        static_cast<std::size_t>(pattern_count) +
                                    static_cast<std::size_t>(p)];
    if (c < 0) throw ContractError("nurse " + std::to_string(scope.nurse[i]) + " pattern not admissible");
    cost += c;
    const auto g = static_cast<std::size_t>(scope.grade[i]);
    for (unsigned bits = instance_->patterns[static_cast<std::size_t>(p)]; bits != 0; bits &= bits - 1) {
      ++on_shift[static_cast<std::size_t>(std::countr_zero(bits))][g];
    }
  }
  std::int64_t violation = 0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(kShiftCount); ++k) {
    int worked = 0;
    for (std::size_t s = 0; s < static_cast<std::size_t>(kGradeCount); ++s) {
      worked += on_shift[k][s];
      if (!((parts >> s) & 1u)) continue;
      violation += std::max(0, scope.demand[k][s] - worked);
    }
  }
  return {static_cast<double>(cost), violation};
}

MallAdapter::MallAdapter(const MallInstance& instance)
    : instance_(&instance),
      part_positions_(static_cast<std::size_t>(instance.area_count)),
      all_types_(static_cast<std::size_t>(instance.type_count)) {
  for (int loc = 0; loc < instance.location_count; ++loc) {
    part_positions_[static_cast<std::size_t>(instance.area_of[static_cast<std::size_t>(loc)])].push_back(loc);
  }
  std::iota(all_types_.begin(), all_types_.end(), 0);
  const auto types = static_cast<std::size_t>(instance.type_count);
  share_group_.resize(types * types);
  for (std::size_t a = 0; a < types; ++a) {
    for (std::size_t b = 0; b < types; ++b) {
      share_group_[a * types + b] = instance.TypesShareGroup(static_cast<int>(a), static_cast<int>(b));
    }
  }
  for (int area = 0; area < instance.area_count; ++area) {
    for (int t = 0; t < instance.type_count; ++t) {
      cell_fixed_.push_back(instance.FixedRent(t, area));
      cell_att_.push_back(instance.Attractiveness(area, t));
    }
  }
  if (instance.area_count <= kCachedMaskAreas) {
    layouts_.resize(std::size_t{1} << instance.area_count);
    for (std::size_t mask = 1; mask < layouts_.size(); ++mask) {
      layouts_[mask] = MakeLayout(static_cast<PartMask>(mask));
    }
  }
}

MallAdapter::GeneLayout MallAdapter::MakeLayout(PartMask parts) const {
  const std::vector<int> positions = PositionsOf(parts);
  GeneLayout layout;
  std::vector<int> last(static_cast<std::size_t>(instance_->area_count), -1);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const int area = instance_->area_of[static_cast<std::size_t>(positions[i])];
    layout.area.push_back(area);
    layout.previous.push_back(last[static_cast<std::size_t>(area)]);
    last[static_cast<std::size_t>(area)] = static_cast<int>(i);
  }
  return layout;
}

std::span<const int> MallAdapter::PartPositions(int part) const {
  return part_positions_.at(static_cast<std::size_t>(part));
}

MallAssignment MallAdapter::ToAssignment(PartMask parts, std::span<const int> genome) const {
  MallAssignment a;
  for (int area = 0; area < instance_->area_count; ++area) {
    if ((parts >> area) & 1u) a.areas.push_back(area);
  }
  a.shop_type = Spread(*this, parts, genome);
  return a;
}

// Same arithmetic, in the same order, as MallRent / AreaSubRent and
// MallViolation, without building the intermediate shop list.
Evaluation MallAdapter::Evaluate(PartMask parts, Measure measure, std::span<const int> genome) const {
  const MallInstance& m = *instance_;
  if (measure == Measure::kFull && parts != full_mask()) {
    throw ContractError("the original mall objective needs every area");
  }
  if (parts == 0 || (parts & ~full_mask()) != 0) throw ContractError("invalid part set");
  if (measure == Measure::kSubstitute && (parts & (parts - 1)) != 0) {
    throw ContractError("area sub-rent requires a single-area scope");
  }
  const std::size_t types = static_cast<std::size_t>(m.type_count);
  GeneLayout local;
  const GeneLayout* layout;
  if (parts < layouts_.size()) {
    layout = &layouts_[parts];
  } else {
    local = MakeLayout(parts);
    layout = &local;
  }
  if (layout->area.size() != genome.size()) {
    throw ContractError("genome length does not match its part set");
  }
  for (int t : genome) {
    if (t < 0 || t >= m.type_count) throw ContractError("shop type out of range");
  }
  // Scratch space; `counts` is all zero between calls.
  thread_local std::vector<int> counts;
  thread_local std::vector<int> pairs_in;
  thread_local std::vector<int> shops_of_type;
  thread_local std::vector<std::uint64_t> present;  // types seen per area, when they fit a word
  const std::size_t cells = static_cast<std::size_t>(m.area_count) * types;
  if (counts.size() < cells) counts.resize(cells, 0);
  pairs_in.assign(static_cast<std::size_t>(m.area_count), 0);
  shops_of_type.assign(types, 0);
  const bool sparse = types <= 64;
  present.assign(static_cast<std::size_t>(m.area_count), 0);
  for (std::size_t i = 0; i < genome.size(); ++i) {
    const auto t = static_cast<std::size_t>(genome[i]);
    const auto area = static_cast<std::size_t>(layout->area[i]);
    ++counts[area * types + t];
    if (sparse) present[area] |= std::uint64_t{1} << t;
    const int prev = layout->previous[i];
    if (prev >= 0 && share_group_[static_cast<std::size_t>(genome[static_cast<std::size_t>(prev)]) * types + t]) {
      ++pairs_in[area];
    }
  }

  double rent = 0;
  int by_size[4] = {0, 0, 0, 0};
  auto add_cell = [&](std::size_t cell, std::size_t t) {
    const int n = counts[cell];
    counts[cell] = 0;
    const double fixed = cell_fixed_[cell];
    const double att = cell_att_[cell];
    for (int i = 0; i < n / 3; ++i) rent += fixed + att * 3.0;
    if (n % 3 == 2) rent += fixed + att * 2.0;
    if (n % 3 == 1) rent += fixed + att * 1.0;
    shops_of_type[t] += n / 3 + (n % 3 != 0 ? 1 : 0);
    by_size[3] += n / 3;
    by_size[2] += n % 3 == 2;
    by_size[1] += n % 3 == 1;
  };
  for (int area = 0; area < m.area_count; ++area) {
    if (!((parts >> area) & 1u)) continue;
    const std::size_t base = static_cast<std::size_t>(area) * types;
    if (sparse) {
      // Ascending type order, as in the shop list.
      for (std::uint64_t bits = present[static_cast<std::size_t>(area)]; bits != 0; bits &= bits - 1) {
        const auto t = static_cast<std::size_t>(std::countr_zero(bits));
        add_cell(base + t, t);
      }
    } else {
      for (std::size_t t = 0; t < types; ++t) {
        if (counts[base + t] != 0) add_cell(base + t, t);
      }
    }
  }
  const bool present_only = measure == Measure::kSubstitute;
  for (std::size_t t = 0; t < types; ++t) {
    const int n = shops_of_type[t];
    if (present_only && n == 0) continue;
    rent -= m.count_slope[t] * std::abs(n - m.bounds[t].ideal_count);
  }
  for (int area = 0; area < m.area_count; ++area) {
    if (!((parts >> area) & 1u)) continue;
    rent += m.synergy_bonus * static_cast<double>(pairs_in[static_cast<std::size_t>(area)]);
  }
  if (measure == Measure::kSubstitute) return {rent, 0};

  std::int64_t violation = 0;
  for (std::size_t t = 0; t < types; ++t) {
    const int n = shops_of_type[t];
    violation += std::max(0, m.bounds[t].min_count - n) + std::max(0, n - m.bounds[t].max_count);
  }
  violation += std::max(0, by_size[1] - m.max_small);
  violation += std::max(0, by_size[2] - m.max_medium);
  violation += std::max(0, by_size[3] - m.max_large);
  return {rent, violation};
}

}  // namespace pyramid_ga
