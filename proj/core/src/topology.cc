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

#include "pyramid_ga/topology.h"

#include <algorithm>
#include <map>

#include "pyramid_ga/errors.h"

namespace pyramid_ga {

int PyramidTopology::total_population() const {
  int total = 0;
  for (const TopologyNode& n : nodes) total += n.population_size;
  return total;
}

std::string PyramidTopology::PopulationSplit() const {
  // Runs of equal sizes among the lower nodes, in node order.
  std::vector<std::pair<int, int>> runs;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (static_cast<int>(i) == top) continue;
    if (!runs.empty() && runs.back().second == nodes[i].population_size) {
      ++runs.back().first;
    } else {
      runs.emplace_back(1, nodes[i].population_size);
    }
  }
  std::string out;
  for (const auto& [count, size] : runs) {
    out += std::to_string(count) + "x" + std::to_string(size) + "+";
  }
  out += std::to_string(nodes[static_cast<std::size_t>(top)].population_size);
  return out;
}

PyramidTopology BuildNurseTopology(int main_size, int subpop_size) {
  if (main_size < 1 || subpop_size < 1) throw ContractError("population sizes must be positive");
  PyramidTopology t;
  t.part_count = 3;
  auto add = [&](std::string label, PartMask parts, int size, Measure measure) {
    t.nodes.push_back({std::move(label), parts, size, measure, {}});
    return static_cast<int>(t.nodes.size()) - 1;
  };
  const int g1 = add("1", 0b001, subpop_size, Measure::kSubstitute);
  const int g2 = add("2", 0b010, subpop_size, Measure::kSubstitute);
  const int g3 = add("3", 0b100, subpop_size, Measure::kSubstitute);
  const int g12 = add("1+2", 0b011, subpop_size, Measure::kSubstitute);
  const int g23 = add("2+3", 0b110, subpop_size, Measure::kSubstitute);
  const int g31 = add("3+1", 0b101, subpop_size, Measure::kSubstitute);
  const int g123 = add("1+2+3", 0b111, subpop_size, Measure::kSubstitute);
  const int all = add("all", 0b111, main_size, Measure::kFull);
  t.nodes[static_cast<std::size_t>(g12)].decompositions = {{g1, g2}};
  t.nodes[static_cast<std::size_t>(g23)].decompositions = {{g2, g3}};
  t.nodes[static_cast<std::size_t>(g31)].decompositions = {{g3, g1}};
  const std::vector<std::vector<int>> three_way = {
      {g12, g3}, {g23, g1}, {g31, g2}, {g1, g2, g3}};
  t.nodes[static_cast<std::size_t>(g123)].decompositions = three_way;
  auto& top_ways = t.nodes[static_cast<std::size_t>(all)].decompositions;
  top_ways.push_back({g123});
  top_ways.insert(top_ways.end(), three_way.begin(), three_way.end());
  t.top = all;
  ValidateTopology(t);
  return t;
}

PyramidTopology BuildMallTopology(int main_size, int area_count, int subpop_size) {
  if (main_size < 1 || subpop_size < 1) throw ContractError("population sizes must be positive");
  if (area_count < 1 || area_count > 30) throw ContractError("area count must be in 1..30");
  PyramidTopology t;
  t.part_count = area_count;
  std::vector<int> slots;
  for (int a = 0; a < area_count; ++a) {
    t.nodes.push_back({std::to_string(a + 1), PartMask{1} << a, subpop_size, Measure::kSubstitute, {}});
    slots.push_back(a);
  }
  t.nodes.push_back({"all", t.full_mask(), main_size, Measure::kFull, {slots}});
  t.top = area_count;
  ValidateTopology(t);
  return t;
}

PyramidTopology ApplyJoined(const PyramidTopology& topology) {
  PyramidTopology t = topology;
  for (TopologyNode& n : t.nodes) {
    n.parts = t.full_mask();
    n.measure = Measure::kFull;
    n.decompositions.clear();
  }
  t.joined = true;
  ValidateTopology(t);
  return t;
}

void ValidateTopology(const PyramidTopology& t) {
  if (t.nodes.empty()) throw ContractError("topology has no nodes");
  if (t.part_count < 1 || t.part_count > 32) throw ContractError("part count must be in 1..32");
  if (t.top < 0 || t.top >= static_cast<int>(t.nodes.size())) throw ContractError("top node out of range");
  const TopologyNode& top = t.nodes[static_cast<std::size_t>(t.top)];
  if (top.parts != t.full_mask() || top.measure != Measure::kFull) {
    throw ContractError("top node must cover every part with the original objective");
  }
  int full_nodes = 0;
  for (const TopologyNode& n : t.nodes) {
    if (n.population_size < 1) throw ContractError("node " + n.label + ": population size must be positive");
    if (n.parts == 0 || (n.parts & ~t.full_mask())) throw ContractError("node " + n.label + ": bad part set");
    if (n.measure == Measure::kFull) {
      ++full_nodes;
      if (n.parts != t.full_mask()) throw ContractError("node " + n.label + ": original objective needs every part");
    }
    for (const auto& d : n.decompositions) {
      if (d.empty()) throw ContractError("node " + n.label + ": empty decomposition");
      PartMask covered = 0;
      for (int slot : d) {
        if (slot < 0 || slot >= static_cast<int>(t.nodes.size())) {
          throw ContractError("node " + n.label + ": decomposition slot out of range");
        }
        const PartMask parts = t.nodes[static_cast<std::size_t>(slot)].parts;
        if (covered & parts) throw ContractError("node " + n.label + ": decomposition parts overlap");
        covered |= parts;
      }
      if (covered != n.parts) throw ContractError("node " + n.label + ": decomposition does not cover the node");
    }
  }
  if (!t.joined && full_nodes != 1) {
    throw ContractError("exactly one node may evaluate the original objective");
  }
}

PyramidLayout::PyramidLayout(const PyramidTopology& topology, const ProblemAdapter& problem) {
  if (problem.part_count() != topology.part_count) {
    throw ContractError("topology part count does not match the problem");
  }
  const std::size_t n = topology.nodes.size();
  positions_.resize(n);
  domains_.resize(n);
  slot_maps_.resize(n);
  decompositions_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    positions_[i] = problem.PositionsOf(topology.nodes[i].parts);
    for (int pos : positions_[i]) domains_[i].push_back(problem.Domain(pos));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const TopologyNode& node = topology.nodes[i];
    decompositions_[i] = node.decompositions;
    // global position -> index in this node's genome
    std::map<int, int> index_of;
    for (std::size_t j = 0; j < positions_[i].size(); ++j) index_of[positions_[i][j]] = static_cast<int>(j);
    for (const auto& d : node.decompositions) {
      std::vector<std::vector<int>> maps;
      for (int slot : d) {
        std::vector<int> map;
        for (int pos : positions_[static_cast<std::size_t>(slot)]) map.push_back(index_of.at(pos));
        maps.push_back(std::move(map));
      }
      slot_maps_[i].push_back(std::move(maps));
    }
  }
}

int PyramidLayout::FindDecomposition(int node, std::span<const int> slot_nodes) const {
  const auto& ways = decompositions_[static_cast<std::size_t>(node)];
  for (std::size_t d = 0; d < ways.size(); ++d) {
    if (std::equal(ways[d].begin(), ways[d].end(), slot_nodes.begin(), slot_nodes.end())) {
      return static_cast<int>(d);
    }
  }
  std::vector<int> wanted(slot_nodes.begin(), slot_nodes.end());
  std::sort(wanted.begin(), wanted.end());
  for (std::size_t d = 0; d < ways.size(); ++d) {
    std::vector<int> have = ways[d];
    std::sort(have.begin(), have.end());
    if (have == wanted) return static_cast<int>(d);
  }
  return -1;
}

}  // namespace pyramid_ga
