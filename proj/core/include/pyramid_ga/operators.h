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

#ifndef PYRAMID_GA_OPERATORS_H_
#define PYRAMID_GA_OPERATORS_H_

#include <span>
#include <utility>

#include "pyramid_ga/population.h"
#include "pyramid_ga/rng.h"
#include "pyramid_ga/topology.h"

namespace pyramid_ga {

// Two-parent two-children uniform crossover: per gene, child 1 takes a's
// value with probability p (else b's) and child 2 takes the other one.
// p is resolved to 1/65536.
std::pair<Genome, Genome> UniformCrossover(std::span<const int> a, std::span<const int> b,
                                           double p, Rng& rng);

// Concatenates part genomes into a genome for `node`. `slot_nodes` must be
// one of the node's registered decompositions and parts[i] a genome of
// slot_nodes[i]. Gene values are copied verbatim.
Genome Assemble(const PyramidTopology& topology, const PyramidLayout& layout, int node,
                std::span<const int> slot_nodes, std::span<const Genome> parts);

// Same, addressing the decomposition by index.
Genome AssembleDecomposition(const PyramidLayout& layout, int node, int decomposition,
                             std::span<const std::span<const int>> parts);
// Same, writing into `child` so callers can reuse its storage.
void AssembleDecompositionInto(const PyramidLayout& layout, int node, int decomposition,
                               std::span<const std::span<const int>> parts, Genome& child);

// Uniform choice among the node's decompositions; leaves have none.
int PickDecomposition(const TopologyNode& node, Rng& rng);

// Each gene independently, with probability `rate`, is redrawn uniformly from
// its position's admissible domain. Returns the number of genes redrawn.
int MutateInPlace(Genome& genome, std::span<const std::span<const int>> domains, double rate,
                  Rng& rng);
Genome Mutate(Genome genome, std::span<const std::span<const int>> domains, double rate, Rng& rng);

}  // namespace pyramid_ga

#endif  // PYRAMID_GA_OPERATORS_H_
