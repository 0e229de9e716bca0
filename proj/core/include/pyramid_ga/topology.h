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

#ifndef PYRAMID_GA_TOPOLOGY_H_
#define PYRAMID_GA_TOPOLOGY_H_

#include <span>
#include <string>
#include <vector>

#include "pyramid_ga/problem.h"

namespace pyramid_ga {

struct TopologyNode {
  std::string label;
  PartMask parts = 0;
  int population_size = 0;
  Measure measure = Measure::kSubstitute;
  // Each decomposition lists the node indices whose part sets partition this
  // node's part set; assembly draws one parent per slot, in slot order.
  std::vector<std::vector<int>> decompositions;

  bool is_leaf() const { return decompositions.empty(); }
};

struct PyramidTopology {
  std::vector<TopologyNode> nodes;
  int top = 0;
  int part_count = 0;
  bool joined = false;  // every node solves the original problem

  PartMask full_mask() const { return part_count >= 32 ? ~PartMask{0} : (PartMask{1} << part_count) - 1; }
  int total_population() const;
  // e.g. "7x100+300": lower-level sizes, then the top node's size.
  std::string PopulationSplit() const;
};

// Grades 1-3 as parts 0-2: {1} {2} {3} {1,2} {2,3} {3,1} {1,2,3} and the top
// node "all" that evaluates the original objective.
PyramidTopology BuildNurseTopology(int main_size, int subpop_size = 100);

// One node per area plus the top node assembled from one agent per area.
PyramidTopology BuildMallTopology(int main_size, int area_count = 5, int subpop_size = 100);

// Every node solves the whole problem with the original objective and no
// assembly.
PyramidTopology ApplyJoined(const PyramidTopology& topology);

// Throws ContractError when a decomposition does not partition its node,
// the top node does not cover every part, or sizes are not positive.
void ValidateTopology(const PyramidTopology& topology);

// Per-node position lists and slot-to-node index maps for assembly.
class PyramidLayout {
 public:
  PyramidLayout(const PyramidTopology& topology, const ProblemAdapter& problem);

  std::span<const int> positions(int node) const { return positions_[static_cast<std::size_t>(node)]; }
  std::span<const std::span<const int>> domains(int node) const {
    return domains_[static_cast<std::size_t>(node)];
  }
  // Node-genome index of every gene of `slot` in `decomposition` of `node`.
  std::span<const int> SlotMap(int node, int decomposition, int slot) const {
    return slot_maps_[static_cast<std::size_t>(node)][static_cast<std::size_t>(decomposition)]
                     [static_cast<std::size_t>(slot)];
  }
  // Index of the decomposition of `node` with exactly these slot nodes (in
  // any order), or -1.
  int FindDecomposition(int node, std::span<const int> slot_nodes) const;

 private:
  std::vector<std::vector<std::vector<int>>> decompositions_;
  std::vector<std::vector<int>> positions_;
  std::vector<std::vector<std::span<const int>>> domains_;
  std::vector<std::vector<std::vector<std::vector<int>>>> slot_maps_;
};

}  // namespace pyramid_ga

#endif  // PYRAMID_GA_TOPOLOGY_H_
