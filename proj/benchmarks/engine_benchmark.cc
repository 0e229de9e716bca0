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

#include "pyramid_ga/adapters.h"
#include "pyramid_ga/engine.h"

namespace pyramid_ga {
namespace {

// One generation of the full-size engine per iteration, by strategy.
template <typename Adapter>
void StepLoop(benchmark::State& state, const Adapter& adapter, const PyramidTopology& topology,
              const EngineConfig& config) {
  const auto strategy = AllStrategies()[static_cast<std::size_t>(state.range(0))];
  PyramidEngine engine(adapter, topology, config, strategy);
  engine.Initialize();
  for (auto _ : state) engine.Step();
  state.SetLabel(std::string(1, StrategyLetter(strategy)));
}

void BM_NurseStep(benchmark::State& state) {
  const NurseInstance inst = GenerateNurseInstance({}, 1).instance;
  const NurseAdapter adapter(inst);
  StepLoop(state, adapter, BuildNurseTopology(300), DefaultNurseConfig());
}
BENCHMARK(BM_NurseStep)->DenseRange(0, 6)->Unit(benchmark::kMillisecond);

void BM_MallStep(benchmark::State& state) {
  const MallInstance m = GenerateMallInstance({}, 1).instance;
  const MallAdapter adapter(m);
  StepLoop(state, adapter, BuildMallTopology(500, m.area_count), DefaultMallConfig());
}
BENCHMARK(BM_MallStep)->DenseRange(0, 6)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pyramid_ga
