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

#include "pyramid_ga/oracle.h"

#include <string>

#include "pyramid_ga/errors.h"

namespace pyramid_ga {
namespace {

std::uint64_t SpaceSize(const std::vector<std::size_t>& radix, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (std::size_t r : radix) {
    if (r == 0) return 0;
    if (total > limit / r) {
      throw ValidationError("search space exceeds oracle limit of " + std::to_string(limit));
    }
    total *= r;
  }
  return total;
}

// Advances the odometer; false after the last digit wraps.
bool Next(std::vector<std::size_t>& digits, const std::vector<std::size_t>& radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

OracleResult NurseOracle(const NurseInstance& instance, std::uint64_t limit) {
  std::vector<std::size_t> radix;
  for (const Nurse& n : instance.nurses) radix.push_back(n.patterns.size());
  SpaceSize(radix, limit);
  OracleResult best;
  std::vector<std::size_t> digits(radix.size(), 0);
  NurseAssignment a;
  a.choice.resize(radix.size());
  do {
    for (std::size_t i = 0; i < digits.size(); ++i) {
      a.choice[i] = instance.nurses[i].patterns[digits[i]];
    }
    ++best.enumerated;
    if (CoverViolation(instance, a) != 0) continue;
    const double cost = static_cast<double>(PreferenceCost(instance, a));
    if (!best.feasible || cost < best.best_value) {
      best.feasible = true;
      best.best_value = cost;
      best.assignment = a.choice;
    }
  } while (Next(digits, radix));
  return best;
}

OracleResult MallOracle(const MallInstance& instance, std::uint64_t limit) {
  std::vector<std::size_t> radix(static_cast<std::size_t>(instance.location_count),
                                 static_cast<std::size_t>(instance.type_count));
  SpaceSize(radix, limit);
  OracleResult best;
  std::vector<std::size_t> digits(radix.size(), 0);
  std::vector<int> types(radix.size());
  do {
    for (std::size_t i = 0; i < digits.size(); ++i) types[i] = static_cast<int>(digits[i]);
    ++best.enumerated;
    const MallAssignment a = FullMallAssignment(instance, types);
    if (MallViolation(instance, a) != 0) continue;
    const double rent = MallRent(instance, a);
    if (!best.feasible || rent > best.best_value) {
      best.feasible = true;
      best.best_value = rent;
      best.assignment = types;
    }
  } while (Next(digits, radix));
  return best;
}

}  // namespace pyramid_ga
