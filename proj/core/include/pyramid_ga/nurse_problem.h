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

#ifndef PYRAMID_GA_NURSE_PROBLEM_H_
#define PYRAMID_GA_NURSE_PROBLEM_H_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "pyramid_ga/common.h"

namespace pyramid_ga {

// Weekly nurse rostering: every nurse works one shift pattern out of an
// admissible list; grade-banded demand per shift must be covered, where
// more qualified nurses (lower grade number) count toward less qualified
// bands; the objective is the summed nurse/pattern penalty cost.

inline constexpr int kShiftCount = 14;  // days 0-6, nights 7-13
inline constexpr int kDaysPerWeek = 7;
inline constexpr int kGradeCount = 3;
inline constexpr int kMaxPatternCount = 411;
inline constexpr int kMaxPenaltyCost = 100;

using ShiftMask = std::uint16_t;  // bit k set = works shift k
inline constexpr ShiftMask kDayBits = 0x007f;
inline constexpr ShiftMask kNightBits = 0x3f80;

// Non-empty subset of grades {1, 2, 3}.
class GradeSet {
 public:
  // Throws ContractError when empty or a grade is outside 1..3.
  static GradeSet Of(std::initializer_list<int> grades);
  static GradeSet FromMask(unsigned mask);  // bit g-1 set = grade g
  static GradeSet All() { return GradeSet(0b111u); }

  bool Contains(int grade) const {
    return grade >= 1 && grade <= kGradeCount && (mask_ >> (grade - 1)) & 1u;
  }
  bool IsAll() const { return mask_ == 0b111u; }
  unsigned mask() const { return mask_; }
  std::string ToString() const;  // "{1,2}"

  bool operator==(const GradeSet&) const = default;

 private:
  explicit GradeSet(unsigned mask) : mask_(mask) {}
  unsigned mask_;
};

struct Nurse {
  int grade = 1;                 // 1 = most qualified
  std::vector<int> patterns;     // admissible pattern ids, ascending, unique
  std::vector<int> costs;        // parallel to `patterns`, each in [0, 100]

  bool operator==(const Nurse&) const = default;
};

struct NurseInstance {
  std::vector<ShiftMask> patterns;
  std::vector<Nurse> nurses;
  // demand[shift][band - 1]: cumulative, band s counts nurses of grade <= s.
  std::array<std::array<int, kGradeCount>, kShiftCount> demand{};
  // headcount[shift][grade - 1]: nominal number of nurses of that grade
  // expected on the shift. Only scoped (partial) evaluation reads it.
  std::array<std::array<int, kGradeCount>, kShiftCount> headcount{};

  int nurse_count() const { return static_cast<int>(nurses.size()); }
  int pattern_count() const { return static_cast<int>(patterns.size()); }

  // Penalty cost of the pair, or -1 when the pattern is not admissible.
  int Cost(int nurse, int pattern) const;

  bool operator==(const NurseInstance&) const = default;
};

// Throws ValidationError naming the first broken invariant.
void ValidateNurseInstance(const NurseInstance& instance);

NurseInstance ParseNurseInstance(std::string_view text);
NurseInstance ParseNurseInstance(std::istream& in);
std::string RenderNurseInstance(const NurseInstance& instance);

// One pattern id per nurse whose grade is in `scope`; kUnassigned elsewhere.
struct NurseAssignment {
  GradeSet scope = GradeSet::All();
  std::vector<int> choice;

  bool operator==(const NurseAssignment&) const = default;
};

// Throws ContractError when the assignment does not cover exactly the
// nurses of its scope with admissible patterns.
void CheckNurseAssignment(const NurseInstance& instance, const NurseAssignment& a);

// Missing nurse-shift-band units against the (scoped) cumulative demand.
std::int64_t CoverViolation(const NurseInstance& instance, const NurseAssignment& a);
std::int64_t PreferenceCost(const NurseInstance& instance, const NurseAssignment& a);

// Scoped demand for band `band` on `shift`: demand minus the nominal
// headcount of lower grades outside the scope, floored at zero.
int ScopedDemand(const NurseInstance& instance, GradeSet scope, int shift, int band);

struct NurseObjective {
  std::int64_t cost = 0;
  std::int64_t violation = 0;

  bool operator==(const NurseObjective&) const = default;
};

NurseObjective NurseRawObjective(const NurseInstance& instance, const NurseAssignment& a);

// Requires a full-scope assignment.
bool IsFeasible(const NurseInstance& instance, const NurseAssignment& a);

struct NurseGenParams {
  int nurse_count = 30;
  int pattern_count = kMaxPatternCount;
  int patterns_per_nurse = 40;
  double tightness = 0.3;
  bool emit_headcount = true;
};

struct GeneratedNurseInstance {
  NurseInstance instance;
  NurseAssignment planted;           // feasible by construction
  std::vector<std::string> clamped;  // one note per clamped parameter
};

GeneratedNurseInstance GenerateNurseInstance(NurseGenParams params, std::uint64_t seed);

}  // namespace pyramid_ga

#endif  // PYRAMID_GA_NURSE_PROBLEM_H_
