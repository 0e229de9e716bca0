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

#ifndef PYRAMID_GA_ADAPTERS_H_
#define PYRAMID_GA_ADAPTERS_H_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "pyramid_ga/mall_problem.h"
#include "pyramid_ga/nurse_problem.h"
#include "pyramid_ga/problem.h"

namespace pyramid_ga {

// Parts are grades (part p = grade p + 1); positions are nurse indices.
// The substitute measure of a grade set is the scoped cost and cover
// violation of that set; the original objective is the full-scope one.
class NurseAdapter : public ProblemAdapter {
 public:
  explicit NurseAdapter(const NurseInstance& instance);

  std::string name() const override { return "nurse"; }
  int part_count() const override { return kGradeCount; }
  int position_count() const override { return instance_->nurse_count(); }
  std::span<const int> PartPositions(int part) const override;
  std::span<const int> Domain(int position) const override;
  Direction direction() const override { return Direction::kMinimize; }
  Evaluation Evaluate(PartMask parts, Measure measure, std::span<const int> genome) const override;

  // Spreads a node genome over a nurse assignment of the matching scope.
  NurseAssignment ToAssignment(PartMask parts, std::span<const int> genome) const;
  const NurseInstance& instance() const { return *instance_; }

 private:
  // Per grade mask: nurse of every gene and the scoped demand table.
  struct ScopeData {
    std::vector<int> nurse;
    std::vector<int> grade;  // 0-based
    std::array<std::array<int, kGradeCount>, kShiftCount> demand{};
  };

  const NurseInstance* instance_;
  std::vector<std::vector<int>> part_positions_;
  std::vector<int> cost_table_;  // nurse x pattern, -1 when not admissible
  std::array<ScopeData, 1u << kGradeCount> scopes_;
};

// Parts are areas; positions are locations; every type is admissible
// everywhere. Single-area nodes use the area sub-rent (no constraint
// violation); the original objective is the mall rent and violation.
class MallAdapter : public ProblemAdapter {
 public:
  static constexpr int kCachedMaskAreas = 12;

  explicit MallAdapter(const MallInstance& instance);

  std::string name() const override { return "mall"; }
  int part_count() const override { return instance_->area_count; }
  int position_count() const override { return instance_->location_count; }
  std::span<const int> PartPositions(int part) const override;
  std::span<const int> Domain(int) const override { return all_types_; }
  Direction direction() const override { return Direction::kMaximize; }
  Evaluation Evaluate(PartMask parts, Measure measure, std::span<const int> genome) const override;

  MallAssignment ToAssignment(PartMask parts, std::span<const int> genome) const;
  const MallInstance& instance() const { return *instance_; }

 private:
  const MallInstance* instance_;
  std::vector<std::vector<int>> part_positions_;
  std::vector<int> all_types_;
  // Per part mask: the area of every gene and the gene holding the previous
  // location of the same area (-1 for the first).
  struct GeneLayout {
    std::vector<int> area;
    std::vector<int> previous;
  };
  GeneLayout MakeLayout(PartMask parts) const;

  std::vector<GeneLayout> layouts_;  // by part mask, small area counts only
  std::vector<char> share_group_;    // type x type
  std::vector<double> cell_fixed_;   // area x type
  std::vector<double> cell_att_;     // area x type
};

}  // namespace pyramid_ga

#endif  // PYRAMID_GA_ADAPTERS_H_
