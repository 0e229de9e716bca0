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

#include "pyramid_ga/nurse_problem.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "pyramid_ga/errors.h"
#include "pyramid_ga/rng.h"
#include "pyramid_ga/text_format.h"

namespace pyramid_ga {

GradeSet GradeSet::Of(std::initializer_list<int> grades) {
  unsigned mask = 0;
  for (int g : grades) {
    if (g < 1 || g > kGradeCount) {
      throw ContractError("grade " + std::to_string(g) + " outside 1..3");
    }
    mask |= 1u << (g - 1);
  }
  return FromMask(mask);
}

GradeSet GradeSet::FromMask(unsigned mask) {
  if (mask == 0 || mask > 0b111u) {
    throw ContractError("grade set must be a non-empty subset of {1,2,3}");
  }
  return GradeSet(mask);
}

std::string GradeSet::ToString() const {
  std::string out = "{";
  for (int g = 1; g <= kGradeCount; ++g) {
    if (!Contains(g)) continue;
    if (out.size() > 1) out += ',';
    out += std::to_string(g);
  }
  return out + "}";
}

int NurseInstance::Cost(int nurse, int pattern) const {
  const Nurse& n = nurses[static_cast<std::size_t>(nurse)];
  auto it = std::lower_bound(n.patterns.begin(), n.patterns.end(), pattern);
  if (it == n.patterns.end() || *it != pattern) return -1;
  return n.costs[static_cast<std::size_t>(it - n.patterns.begin())];
}

void ValidateNurseInstance(const NurseInstance& instance) {
  if (instance.nurses.empty()) throw ValidationError("no nurses");
  if (instance.patterns.empty() || instance.pattern_count() > kMaxPatternCount) {
    throw ValidationError("pattern count out of range");
  }
  for (std::size_t p = 0; p < instance.patterns.size(); ++p) {
    ShiftMask mask = instance.patterns[p];
    if (mask & ~(kDayBits | kNightBits)) {
      throw ValidationError("pattern " + std::to_string(p) + ": mask has bits beyond 14 shifts");
    }
    if ((mask & kDayBits) && (mask & kNightBits)) {
      throw ValidationError("mixed day/night mask in pattern " + std::to_string(p));
    }
  }
  for (std::size_t i = 0; i < instance.nurses.size(); ++i) {
    const Nurse& n = instance.nurses[i];
    const std::string who = "nurse " + std::to_string(i);
    if (n.grade < 1 || n.grade > kGradeCount) throw ValidationError(who + ": grade out of range");
    if (n.patterns.empty()) throw ValidationError(who + ": no admissible pattern");
    if (n.costs.size() != n.patterns.size()) throw ValidationError(who + ": cost list size mismatch");
    for (std::size_t j = 0; j < n.patterns.size(); ++j) {
      if (n.patterns[j] < 0 || n.patterns[j] >= instance.pattern_count()) {
        throw ValidationError(who + ": admissible pattern id out of range");
      }
      if (j > 0 && n.patterns[j] <= n.patterns[j - 1]) {
        throw ValidationError(who + ": admissible patterns not unique");
      }
      if (n.costs[j] < 0 || n.costs[j] > kMaxPenaltyCost) {
        throw ValidationError(who + ": cost out of range");
      }
    }
  }
  for (int k = 0; k < kShiftCount; ++k) {
    const auto& d = instance.demand[static_cast<std::size_t>(k)];
    for (int s = 0; s < kGradeCount; ++s) {
      if (d[static_cast<std::size_t>(s)] < 0) throw ValidationError("negative demand");
      if (instance.headcount[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)] < 0) {
        throw ValidationError("negative headcount");
      }
    }
    if (d[0] > d[1] || d[1] > d[2]) {
      throw ValidationError("demand not cumulative on shift " + std::to_string(k));
    }
  }
}

namespace {

void ExpectArity(const TextLine& line, std::size_t arity) {
  if (line.tokens.size() != arity) {
    throw ParseError(line.number, line.tokens[0] + " expects " + std::to_string(arity - 1) +
                                      " fields");
  }
}

int ParseIndex(const TextLine& line, std::size_t field, int bound, const char* what) {
  long long v = ParseInteger(line.tokens[field], line.number);
  if (v < 0 || v >= bound) {
    throw ParseError(line.number, std::string(what) + " index out of range");
  }
  return static_cast<int>(v);
}

}  // namespace

NurseInstance ParseNurseInstance(std::string_view text) {
  std::vector<TextLine> lines = TokenizeLines(text);
  if (lines.empty()) throw ParseError(1, "empty input, expected NURSE header");
  const TextLine& header = lines.front();
  if (header.tokens[0] != "NURSE") throw ParseError(header.number, "expected NURSE header");
  ExpectArity(header, 3);
  long long nurse_count = ParseInteger(header.tokens[1], header.number);
  long long pattern_count = ParseInteger(header.tokens[2], header.number);
  if (nurse_count < 1) throw ValidationError("no nurses");
  if (pattern_count < 1 || pattern_count > kMaxPatternCount) {
    throw ValidationError("pattern count out of range");
  }

  NurseInstance instance;
  instance.patterns.assign(static_cast<std::size_t>(pattern_count), 0);
  instance.nurses.resize(static_cast<std::size_t>(nurse_count));
  std::vector<bool> seen_pattern(instance.patterns.size(), false);
  std::vector<bool> seen_nurse(instance.nurses.size(), false);
  std::map<std::pair<int, int>, int> costs;
  std::vector<bool> seen_demand(kShiftCount * kGradeCount, false);
  std::vector<bool> seen_headcount(kShiftCount * kGradeCount, false);

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const TextLine& line = lines[i];
    const std::string& key = line.tokens[0];
    if (key == "PAT") {
      ExpectArity(line, 3);
      int id = ParseIndex(line, 1, static_cast<int>(pattern_count), "pattern");
      const std::string& bits = line.tokens[2];
      if (bits.size() != kShiftCount ||
          bits.find_first_not_of("01") != std::string::npos) {
        throw ParseError(line.number, "pattern mask must be 14 characters of 0/1");
      }
      if (seen_pattern[static_cast<std::size_t>(id)]) throw ParseError(line.number, "duplicate PAT line");
      seen_pattern[static_cast<std::size_t>(id)] = true;
      ShiftMask mask = 0;
      for (int k = 0; k < kShiftCount; ++k) {
        if (bits[static_cast<std::size_t>(k)] == '1') mask |= static_cast<ShiftMask>(1u << k);
      }
      instance.patterns[static_cast<std::size_t>(id)] = mask;
    } else if (key == "N") {
      if (line.tokens.size() < 4) throw ParseError(line.number, "N expects index, grade and patterns");
      int id = ParseIndex(line, 1, static_cast<int>(nurse_count), "nurse");
      if (seen_nurse[static_cast<std::size_t>(id)]) throw ParseError(line.number, "duplicate N line");
      seen_nurse[static_cast<std::size_t>(id)] = true;
      Nurse& nurse = instance.nurses[static_cast<std::size_t>(id)];
      long long grade = ParseInteger(line.tokens[2], line.number);
      if (grade < 1 || grade > kGradeCount) throw ValidationError("nurse " + std::to_string(id) + ": grade out of range");
      nurse.grade = static_cast<int>(grade);
      for (std::size_t t = 3; t < line.tokens.size(); ++t) {
        nurse.patterns.push_back(ParseIndex(line, t, static_cast<int>(pattern_count), "pattern"));
      }
      std::sort(nurse.patterns.begin(), nurse.patterns.end());
      if (std::adjacent_find(nurse.patterns.begin(), nurse.patterns.end()) != nurse.patterns.end()) {
        throw ValidationError("nurse " + std::to_string(id) + ": admissible patterns not unique");
      }
    } else if (key == "C") {
      ExpectArity(line, 4);
      int nurse = ParseIndex(line, 1, static_cast<int>(nurse_count), "nurse");
      int pattern = ParseIndex(line, 2, static_cast<int>(pattern_count), "pattern");
      long long cost = ParseInteger(line.tokens[3], line.number);
      if (cost < 0 || cost > kMaxPenaltyCost) {
        throw ValidationError("cost out of range (line " + std::to_string(line.number) + ")");
      }
      if (!costs.emplace(std::make_pair(nurse, pattern), static_cast<int>(cost)).second) {
        throw ParseError(line.number, "duplicate C line");
      }
    } else if (key == "D" || key == "H") {
      ExpectArity(line, 4);
      int shift = ParseIndex(line, 1, kShiftCount, "shift");
      long long band = ParseInteger(line.tokens[2], line.number);
      if (band < 1 || band > kGradeCount) throw ParseError(line.number, "grade band must be 1..3");
      long long value = ParseInteger(line.tokens[3], line.number);
      if (value < 0) throw ValidationError(key == "D" ? "negative demand" : "negative headcount");
      auto& seen = key == "D" ? seen_demand : seen_headcount;
      std::size_t slot = static_cast<std::size_t>(shift * kGradeCount + band - 1);
      if (seen[slot]) throw ParseError(line.number, "duplicate " + key + " line");
      seen[slot] = true;
      auto& table = key == "D" ? instance.demand : instance.headcount;
      table[static_cast<std::size_t>(shift)][static_cast<std::size_t>(band - 1)] = static_cast<int>(value);
    } else if (key == "NURSE") {
      throw ParseError(line.number, "duplicate NURSE header");
    } else {
      throw ParseError(line.number, "unknown record '" + key + "'");
    }
  }

  for (std::size_t p = 0; p < seen_pattern.size(); ++p) {
    if (!seen_pattern[p]) throw ValidationError("missing PAT line for pattern " + std::to_string(p));
  }
  for (std::size_t n = 0; n < seen_nurse.size(); ++n) {
    if (!seen_nurse[n]) throw ValidationError("missing N line for nurse " + std::to_string(n));
    Nurse& nurse = instance.nurses[n];
    nurse.costs.assign(nurse.patterns.size(), kMaxPenaltyCost);
  }
  for (const auto& [key, cost] : costs) {
    Nurse& nurse = instance.nurses[static_cast<std::size_t>(key.first)];
    auto it = std::lower_bound(nurse.patterns.begin(), nurse.patterns.end(), key.second);
    if (it == nurse.patterns.end() || *it != key.second) {
      throw ValidationError("cost for inadmissible pair (nurse " + std::to_string(key.first) +
                            ", pattern " + std::to_string(key.second) + ")");
    }
    nurse.costs[static_cast<std::size_t>(it - nurse.patterns.begin())] = cost;
  }
  ValidateNurseInstance(instance);
  return instance;
}

NurseInstance ParseNurseInstance(std::istream& in) { return ParseNurseInstance(ReadAll(in)); }

std::string RenderNurseInstance(const NurseInstance& instance) {
  std::ostringstream out;
  out << "NURSE " << instance.nurse_count() << ' ' << instance.pattern_count() << '\n';
  for (int p = 0; p < instance.pattern_count(); ++p) {
    out << "PAT " << p << ' ';
    for (int k = 0; k < kShiftCount; ++k) {
      out << (((instance.patterns[static_cast<std::size_t>(p)] >> k) & 1u) ? '1' : '0');
    }
    out << '\n';
  }
  for (int i = 0; i < instance.nurse_count(); ++i) {
    const Nurse& n = instance.nurses[static_cast<std::size_t>(i)];
    out << "N " << i << ' ' << n.grade;
    for (int p : n.patterns) out << ' ' << p;
    out << '\n';
  }
  for (int i = 0; i < instance.nurse_count(); ++i) {
    const Nurse& n = instance.nurses[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < n.patterns.size(); ++j) {
      out << "C " << i << ' ' << n.patterns[j] << ' ' << n.costs[j] << '\n';
    }
  }
  for (int k = 0; k < kShiftCount; ++k) {
    for (int s = 1; s <= kGradeCount; ++s) {
      int v = instance.demand[static_cast<std::size_t>(k)][static_cast<std::size_t>(s - 1)];
      if (v != 0) out << "D " << k << ' ' << s << ' ' << v << '\n';
    }
  }
  for (int k = 0; k < kShiftCount; ++k) {
    for (int g = 1; g <= kGradeCount; ++g) {
      int v = instance.headcount[static_cast<std::size_t>(k)][static_cast<std::size_t>(g - 1)];
      if (v != 0) out << "H " << k << ' ' << g << ' ' << v << '\n';
    }
  }
  return out.str();
}

void CheckNurseAssignment(const NurseInstance& instance, const NurseAssignment& a) {
  if (a.choice.size() != instance.nurses.size()) {
    throw ContractError("assignment length does not match nurse count");
  }
  for (std::size_t i = 0; i < a.choice.size(); ++i) {
    const int grade = instance.nurses[i].grade;
    if (!a.scope.Contains(grade)) {
      if (a.choice[i] != kUnassigned) {
        throw ContractError("nurse " + std::to_string(i) + " outside scope " +
                            a.scope.ToString() + " has a pattern");
      }
      continue;
    }
    if (a.choice[i] < 0 || a.choice[i] >= instance.pattern_count() ||
        instance.Cost(static_cast<int>(i), a.choice[i]) < 0) {
      throw ContractError("nurse " + std::to_string(i) + " has no admissible pattern in scope " +
                          a.scope.ToString());
    }
  }
}

int ScopedDemand(const NurseInstance& instance, GradeSet scope, int shift, int band) {
  const auto k = static_cast<std::size_t>(shift);
  int d = instance.demand[k][static_cast<std::size_t>(band - 1)];
  for (int g = 1; g < band; ++g) {
    if (!scope.Contains(g)) d -= instance.headcount[k][static_cast<std::size_t>(g - 1)];
  }
  return std::max(d, 0);
}

std::int64_t CoverViolation(const NurseInstance& instance, const NurseAssignment& a) {
  CheckNurseAssignment(instance, a);
  // on_shift[k][g-1]: nurses of grade g in scope working shift k.
  std::array<std::array<int, kGradeCount>, kShiftCount> on_shift{};
  for (std::size_t i = 0; i < a.choice.size(); ++i) {
    if (a.choice[i] == kUnassigned) continue;
    ShiftMask mask = instance.patterns[static_cast<std::size_t>(a.choice[i])];
    const auto g = static_cast<std::size_t>(instance.nurses[i].grade - 1);
    for (int k = 0; k < kShiftCount; ++k) {
      if ((mask >> k) & 1u) ++on_shift[static_cast<std::size_t>(k)][g];
    }
  }
  std::int64_t violation = 0;
  for (int k = 0; k < kShiftCount; ++k) {
    int worked = 0;
    for (int s = 1; s <= kGradeCount; ++s) {
      worked += on_shift[static_cast<std::size_t>(k)][static_cast<std::size_t>(s - 1)];
      if (!a.scope.Contains(s)) continue;
      violation += std::max(0, ScopedDemand(instance, a.scope, k, s) - worked);
    }
  }
  return violation;
}

std::int64_t PreferenceCost(const NurseInstance& instance, const NurseAssignment& a) {
  CheckNurseAssignment(instance, a);
  std::int64_t cost = 0;
  for (std::size_t i = 0; i < a.choice.size(); ++i) {
    if (a.choice[i] != kUnassigned) cost += instance.Cost(static_cast<int>(i), a.choice[i]);
  }
  return cost;
}

NurseObjective NurseRawObjective(const NurseInstance& instance, const NurseAssignment& a) {
  return {PreferenceCost(instance, a), CoverViolation(instance, a)};
}

bool IsFeasible(const NurseInstance& instance, const NurseAssignment& a) {
  if (!a.scope.IsAll()) throw ContractError("feasibility is defined for full assignments only");
  return CoverViolation(instance, a) == 0;
}

GeneratedNurseInstance GenerateNurseInstance(NurseGenParams params, std::uint64_t seed) {
  GeneratedNurseInstance out;
  auto clamp_int = [&](int& value, int lo, int hi, const char* name) {
    int clamped = std::clamp(value, lo, hi);
    if (clamped != value) {
      out.clamped.push_back(std::string(name) + " clamped from " + std::to_string(value) +
                            " to " + std::to_string(clamped));
      value = clamped;
    }
  };
  clamp_int(params.nurse_count, 1, 10000, "nurse_count");
  clamp_int(params.pattern_count, 1, kMaxPatternCount, "pattern_count");
  clamp_int(params.patterns_per_nurse, 1, params.pattern_count, "patterns_per_nurse");
  if (!(params.tightness >= 0.0 && params.tightness <= 1.0)) {
    double clamped = std::isnan(params.tightness) ? 0.0 : std::clamp(params.tightness, 0.0, 1.0);
    out.clamped.push_back("tightness clamped from " + FormatShortest(params.tightness) + " to " +
                          FormatShortest(clamped));
    params.tightness = clamped;
  }

  Rng rng(MixSeed(seed, HashString("nurse-instance")));
  NurseInstance& instance = out.instance;

  std::array<int, kDaysPerWeek> days{};
  std::iota(days.begin(), days.end(), 0);
  instance.patterns.resize(static_cast<std::size_t>(params.pattern_count));
  for (ShiftMask& mask : instance.patterns) {
    const bool night = rng.Bernoulli(0.3);
    const int worked = night ? rng.UniformInt(2, 4) : rng.UniformInt(2, 5);
    for (int i = 0; i < worked; ++i) {
      std::swap(days[static_cast<std::size_t>(i)],
                days[static_cast<std::size_t>(i) + rng.UniformIndex(static_cast<std::size_t>(kDaysPerWeek - i))]);
      int shift = days[static_cast<std::size_t>(i)] + (night ? kDaysPerWeek : 0);
      mask |= static_cast<ShiftMask>(1u << shift);
    }
  }

  // Grade mix roughly 30/30/40, every grade present once there are enough nurses.
  const int n = params.nurse_count;
  std::vector<int> grades;
  if (n >= kGradeCount) {
    int g1 = std::max(1, static_cast<int>(std::lround(0.3 * n)));
    int g2 = std::max(1, static_cast<int>(std::lround(0.3 * n)));
    if (g1 + g2 > n - 1) g1 = g2 = (n - 1) / 2;
    grades.insert(grades.end(), static_cast<std::size_t>(g1), 1);
    grades.insert(grades.end(), static_cast<std::size_t>(g2), 2);
    grades.insert(grades.end(), static_cast<std::size_t>(n - g1 - g2), 3);
    for (std::size_t i = grades.size(); i > 1; --i) {
      std::swap(grades[i - 1], grades[rng.UniformIndex(i)]);
    }
  } else {
    for (int i = 0; i < n; ++i) grades.push_back(i + 1);
  }

  std::vector<int> ids(static_cast<std::size_t>(params.pattern_count));
  instance.nurses.resize(static_cast<std::size_t>(n));
  out.planted.scope = GradeSet::All();
  out.planted.choice.assign(static_cast<std::size_t>(n), kUnassigned);
  for (int i = 0; i < n; ++i) {
    Nurse& nurse = instance.nurses[static_cast<std::size_t>(i)];
    nurse.grade = grades[static_cast<std::size_t>(i)];
    std::iota(ids.begin(), ids.end(), 0);
    for (int j = 0; j < params.patterns_per_nurse; ++j) {
      const auto pick = static_cast<std::size_t>(j) +
                        rng.UniformIndex(ids.size() - static_cast<std::size_t>(j));
      std::swap(ids[static_cast<std::size_t>(j)], ids[pick]);
    }
    nurse.patterns.assign(ids.begin(), ids.begin() + params.patterns_per_nurse);
    std::sort(nurse.patterns.begin(), nurse.patterns.end());
    nurse.costs.resize(nurse.patterns.size());
    for (int& cost : nurse.costs) {
      cost = rng.Bernoulli(0.6) ? rng.UniformInt(0, 10) : rng.UniformInt(11, kMaxPenaltyCost);
    }
    out.planted.choice[static_cast<std::size_t>(i)] =
        nurse.patterns[rng.UniformIndex(nurse.patterns.size())];
  }

  // Demand is the planted roster's cumulative cover scaled by tightness, so
  // the planted roster always meets it.
  std::array<std::array<int, kGradeCount>, kShiftCount> on_shift{};
  for (int i = 0; i < n; ++i) {
    ShiftMask mask = instance.patterns[static_cast<std::size_t>(out.planted.choice[static_cast<std::size_t>(i)])];
    const auto g = static_cast<std::size_t>(instance.nurses[static_cast<std::size_t>(i)].grade - 1);
    for (int k = 0; k < kShiftCount; ++k) {
      if ((mask >> k) & 1u) ++on_shift[static_cast<std::size_t>(k)][g];
    }
  }
  for (std::size_t k = 0; k < kShiftCount; ++k) {
    int cumulative = 0;
    for (std::size_t s = 0; s < kGradeCount; ++s) {
      cumulative += on_shift[k][s];
      instance.demand[k][s] = static_cast<int>(std::lround(params.tightness * cumulative));
      if (params.emit_headcount) {
        instance.headcount[k][s] = static_cast<int>(std::lround(params.tightness * on_shift[k][s]));
      }
    }
  }
  ValidateNurseInstance(instance);
  return out;
}

}  // namespace pyramid_ga
