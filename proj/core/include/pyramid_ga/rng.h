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

#ifndef PYRAMID_GA_RNG_H_
#define PYRAMID_GA_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace pyramid_ga {

// Deterministic random stream. Wraps std::mt19937_64, whose output sequence
// is fixed by the standard, and derives every variate itself so that runs
// reproduce bit-for-bit across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, n). Requires n > 0.
  std::size_t UniformIndex(std::size_t n);

  // Uniform on [lo, hi], inclusive.
  int UniformInt(int lo, int hi);

  // Uniform on [0, 1) with 53 random bits.
  double UniformReal() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool Bernoulli(double p) { return UniformReal() < p; }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t MixSeed(std::uint64_t a, std::uint64_t b);

// FNV-1a, stable across platforms.
std::uint64_t HashString(std::string_view text);

}  // namespace pyramid_ga

#endif  // PYRAMID_GA_RNG_H_
