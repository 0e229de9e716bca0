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

#include "pyramid_ga/operators.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "pyramid_ga/errors.h"

namespace pyramid_ga {

std::pair<Genome, Genome> UniformCrossover(std::span<const int> a, std::span<const int> b,
                                           double p, Rng& rng) {
  if (a.size() != b.size()) throw ContractError("uniform crossover parents cover different part sets");
  Genome first(a.size());
  Genome second(a.size());
  // Four 16-bit coin flips per random word.
  const auto threshold = static_cast<std::uint32_t>(std::lround(std::clamp(p, 0.0, 1.0) * 65536.0));
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i % 4 == 0) word = rng.NextU64();
    const auto lane = static_cast<std::uint32_t>((word >> (16 * (i % 4))) & 0xffffu);
    if (lane < threshold) {
      first[i] = a[i];
      second[i] = b[i];
    } else {
      first[i] = b[i];
      second[i] = a[i];
    }
  }
  return {std::move(first), std::move(second)};
}

Genome AssembleDecomposition(const PyramidLayout& layout, int node, int decomposition,
                             std::span<const std::span<const int>> parts) {
  Genome child;
  AssembleDecompositionInto(layout, node, decomposition, parts, child);
  return child;
}

void AssembleDecompositionInto(const PyramidLayout& layout, int node, int decomposition,
                               std::span<const std::span<const int>> parts, Genome& child) {
  child.assign(layout.positions(node).size(), kUnassigned);
  for (std::size_t slot = 0; slot < parts.size(); ++slot) {
    std::span<const int> map = layout.SlotMap(node, decomposition, static_cast<int>(slot));
    if (map.size() != parts[slot].size()) {
      throw ContractError("assembly part " + std::to_string(slot) + " has the wrong length");
    }
    for (std::size_t g = 0; g < map.size(); ++g) child[static_cast<std::size_t>(map[g])] = parts[slot][g];
  }
}

Genome Assemble(const PyramidTopology& topology, const PyramidLayout& layout, int node,
                std::span<const int> slot_nodes, std::span<const Genome> parts) {
  if (slot_nodes.size() != parts.size()) throw ContractError("one part genome per slot required");
  // Order parts to match the registered decomposition's slot order.
  const int d = layout.FindDecomposition(node, slot_nodes);
  if (d < 0) {
    throw ContractError("parts are not a registered decomposition of node " +
                        topology.nodes[static_cast<std::size_t>(node)].label);
  }
  const auto& way = topology.nodes[static_cast<std::size_t>(node)].decompositions[static_cast<std::size_t>(d)];
  std::vector<std::span<const int>> ordered(way.size());
  for (std::size_t slot = 0; slot < way.size(); ++slot) {
    for (std::size_t i = 0; i < slot_nodes.size(); ++i) {
      if (slot_nodes[i] == way[slot]) ordered[slot] = parts[i];
    }
  }
  return AssembleDecomposition(layout, node, d, ordered);
}

int PickDecomposition(const TopologyNode& node, Rng& rng) {
  if (node.decompositions.empty()) {
    throw ContractError("node " + node.label + " is a leaf and has no decomposition");
  }
  if (node.decompositions.size() == 1) return 0;
  return static_cast<int>(rng.UniformIndex(node.decompositions.size()));
}

int MutateInPlace(Genome& genome, std::span<const std::span<const int>> domains, double rate,
                  Rng& rng) {
  if (domains.size() != genome.size()) throw ContractError("one domain per gene required");
  if (!(rate > 0)) return 0;
  int redrawn = 0;
  if (rate >= 1) {
    for (std::size_t i = 0; i < genome.size(); ++i) {
      genome[i] = domains[i][rng.UniformIndex(domains[i].size())];
      ++redrawn;
    }
    return redrawn;
  }
  // Jump straight to the next mutated gene: the gap between successes of
  // per-gene Bernoulli(rate) trials is geometric.
  const double log_keep = std::log1p(-rate);
  auto gap = [&] {
    const double skip = std::floor(std::log1p(-rng.UniformReal()) / log_keep);
    return skip >= static_cast<double>(genome.size()) ? genome.size() : static_cast<std::size_t>(skip);
  };
  for (std::size_t i = gap(); i < genome.size(); i += 1 + gap()) {
    genome[i] = domains[i][rng.UniformIndex(domains[i].size())];
    ++redrawn;
  }
  return redrawn;
}

Genome Mutate(Genome genome, std::span<const std::span<const int>> domains, double rate, Rng& rng) {
  MutateInPlace(genome, domains, rate, rng);
  return genome;
}

}  // namespace pyramid_ga
