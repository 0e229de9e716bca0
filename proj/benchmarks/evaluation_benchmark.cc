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

#include <benchmark/benchmark.h>

#include <vector>

#include "pyramid_ga/adapters.h"
#include "pyramid_ga/rng.h"

namespace pyramid_ga {
namespace {

using Genome = std::vector<int>;

std::vector<Genome> NurseGenomes(const NurseInstance& inst, int count) {
  Rng rng(1);
  std::vector<Genome> out;
  for (int i = 0; i < count; ++i) {
    Genome g;
    for (const Nurse& n : inst.nurses) g.push_back(n.patterns[rng.UniformIndex(n.patterns.size())]);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Genome> MallGenomes(const MallInstance& m, int count) {
  Rng rng(2);
  std::vector<Genome> out;
  for (int i = 0; i < count; ++i) {
    Genome g;
    for (int loc = 0; loc < m.location_count; ++loc) {
      g.push_back(static_cast<int>(rng.UniformIndex(static_cast<std::size_t>(m.type_count))));
    }
    out.push_back(std::move(g));
  }
  return out;
}

void BM_NurseFullEvaluate(benchmark::State& state) {
  const NurseInstance inst = GenerateNurseInstance({}, 1).instance;
  const NurseAdapter adapter(inst);
  const auto genomes = NurseGenomes(inst, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(adapter.Evaluate(adapter.full_mask(), Measure::kFull, genomes[i++ & 255]));
  }
}
BENCHMARK(BM_NurseFullEvaluate);

void BM_NurseReferenceObjective(benchmark::State& state) {
  const NurseInstance inst = GenerateNurseInstance({}, 1).instance;
  const auto genomes = NurseGenomes(inst, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(NurseRawObjective(inst, {GradeSet::All(), genomes[i++ & 255]}));
  }
}
BENCHMARK(BM_NurseReferenceObjective);

void BM_MallFullEvaluate(benchmark::State& state) {
  const MallInstance m = GenerateMallInstance({}, 1).instance;
  const MallAdapter adapter(m);
  const auto genomes = MallGenomes(m, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(adapter.Evaluate(adapter.full_mask(), Measure::kFull, genomes[i++ & 255]));
  }
}
BENCHMARK(BM_MallFullEvaluate);

void BM_MallReferenceRent(benchmark::State& state) {
  const MallInstance m = GenerateMallInstance({}, 1).instance;
  const auto genomes = MallGenomes(m, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    const MallAssignment a = FullMallAssignment(m, genomes[i++ & 255]);
    benchmark::DoNotOptimize(MallRent(m, a) + static_cast<double>(MallViolation(m, a)));
  }
}
BENCHMARK(BM_MallReferenceRent);

}  // namespace
}  // namespace pyramid_ga
