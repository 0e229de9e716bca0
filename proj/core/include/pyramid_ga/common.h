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

#ifndef PYRAMID_GA_COMMON_H_
#define PYRAMID_GA_COMMON_H_

namespace pyramid_ga {

// Marks a position outside an assignment's scope.
inline constexpr int kUnassigned = -1;

enum class Direction { kMinimize, kMaximize };

// +1 when minimizing, -1 when maximizing: sign * value is "lower is better".
inline double DirectionSign(Direction d) { return d == Direction::kMinimize ? 1.0 : -1.0; }

}  // namespace pyramid_ga

#endif  // PYRAMID_GA_COMMON_H_
