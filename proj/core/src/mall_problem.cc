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

#include "pyramid_ga/mall_problem.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <utility>

#include "pyramid_ga/errors.h"
#include "pyramid_ga/rng.h"
#include "pyramid_ga/text_format.h"

namespace pyramid_ga {

bool MallInstance::TypesShareGroup(int a, int b) const {
  const auto& ga = groups_of[static_cast<std::size_t>(a)];
  const auto& gb = groups_of[static_cast<std::size_t>(b)];
  auto i = ga.begin();
  auto j = gb.begin();
  while (i != ga.end() && j != gb.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

std::vector<int> MallInstance::LocationsInArea(int area) const {
  std::vector<int> out;
  for (int loc = 0; loc < location_count; ++loc) {
    if (area_of[static_cast<std::size_t>(loc)] == area) out.push_back(loc);
  }
  return out;
}

int MallInstance::SizeCap(SizeClass size) const {
  switch (size) {
    case SizeClass::kSmall: return max_small;
    case SizeClass::kMedium: return max_medium;
    case SizeClass::kLarge: return max_large;
  }
  return 0;
}

void ValidateMallInstance(const MallInstance& m) {
  if (m.location_count < 1) throw ValidationError("no locations");
  if (m.area_count < 1) throw ValidationError("no areas");
  if (m.type_count < 1) throw ValidationError("no shop types");
  if (m.group_count < 1) throw ValidationError("no groups");
  if (m.area_of.size() != static_cast<std::size_t>(m.location_count)) {
    throw ValidationError("area sizes do not sum to location count");
  }
  for (int area : m.area_of) {
    if (area < 0 || area >= m.area_count) throw ValidationError("location area out of range");
  }
  const auto types = static_cast<std::size_t>(m.type_count);
  if (m.groups_of.size() != types || m.bounds.size() != types || m.count_slope.size() != types ||
      m.fixed_rent.size() != types * static_cast<std::size_t>(m.area_count) ||
      m.attractiveness.size() != types * static_cast<std::size_t>(m.area_count)) {
    throw ValidationError("per-type table size mismatch");
  }
  for (std::size_t t = 0; t < types; ++t) {
    const auto& groups = m.groups_of[t];
    if (groups.empty()) throw ValidationError("type " + std::to_string(t) + " belongs to no group");
    for (std::size_t j = 0; j < groups.size(); ++j) {
      if (groups[j] < 0 || groups[j] >= m.group_count) throw ValidationError("group id out of range");
      if (j > 0 && groups[j] <= groups[j - 1]) throw ValidationError("group ids not unique");
    }
    const TypeBounds& b = m.bounds[t];
    if (b.min_count < 0 || b.min_count > b.ideal_count || b.ideal_count > b.max_count) {
      throw ValidationError("type " + std::to_string(t) + ": bounds not ordered min <= ideal <= max");
    }
  }
  if (m.max_small < 0 || m.max_medium < 0 || m.max_large < 0) {
    throw ValidationError("negative size cap");
  }
  auto check_money = [](double v) {
    if (!std::isfinite(v) || v < 0) throw ValidationError("negative rent parameter");
  };
  for (double v : m.fixed_rent) check_money(v);
  for (double v : m.attractiveness) check_money(v);
  for (double v : m.count_slope) check_money(v);
  check_money(m.synergy_bonus);
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
  if (v < 0 || v >= bound) throw ParseError(line.number, std::string(what) + " index out of range");
  return static_cast<int>(v);
}

int ParseCount(const TextLine& line, std::size_t field) {
  long long v = ParseInteger(line.tokens[field], line.number);
  if (v < 0 || v > 1'000'000'000) throw ValidationError("count out of range (line " + std::to_string(line.number) + ")");
  return static_cast<int>(v);
}

double ParseMoney(const TextLine& line, std::size_t field) {
  double v = ParseDecimal(line.tokens[field], line.number);
  if (v < 0) throw ValidationError("negative rent parameter (line " + std::to_string(line.number) + ")");
  return v;
}

}  // namespace

MallInstance ParseMallInstance(std::string_view text) {
  std::vector<TextLine> lines = TokenizeLines(text);
  if (lines.empty()) throw ParseError(1, "empty input, expected MALL header");
  const TextLine& header = lines.front();
  if (header.tokens[0] != "MALL") throw ParseError(header.number, "expected MALL header");
  ExpectArity(header, 5);
  MallInstance m;
  long long dims[4];
  for (int i = 0; i < 4; ++i) {
    dims[i] = ParseInteger(header.tokens[static_cast<std::size_t>(i + 1)], header.number);
    if (dims[i] < 1 || dims[i] > 1'000'000) throw ValidationError("mall dimension out of range");
  }
  m.location_count = static_cast<int>(dims[0]);
  m.area_count = static_cast<int>(dims[1]);
  m.type_count = static_cast<int>(dims[2]);
  m.group_count = static_cast<int>(dims[3]);
  const auto types = static_cast<std::size_t>(m.type_count);
  m.area_of.assign(static_cast<std::size_t>(m.location_count), -1);
  m.groups_of.resize(types);
  m.bounds.resize(types);
  m.count_slope.assign(types, 0.0);
  m.fixed_rent.assign(types * static_cast<std::size_t>(m.area_count), 0.0);
  m.attractiveness.assign(types * static_cast<std::size_t>(m.area_count), 0.0);
  m.max_small = m.max_medium = m.max_large = m.location_count;

  std::vector<bool> seen_group(types, false), seen_bounds(types, false), seen_slope(types, false);
  std::set<std::pair<int, int>> seen_fixed, seen_att;
  bool seen_sz = false, seen_syn = false;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const TextLine& line = lines[i];
    const std::string& key = line.tokens[0];
    if (key == "A") {
      ExpectArity(line, 3);
      int loc = ParseIndex(line, 1, m.location_count, "location");
      int area = ParseIndex(line, 2, m.area_count, "area");
      if (m.area_of[static_cast<std::size_t>(loc)] != -1) throw ParseError(line.number, "duplicate A line");
      m.area_of[static_cast<std::size_t>(loc)] = area;
    } else if (key == "G") {
      if (line.tokens.size() < 3) throw ParseError(line.number, "G expects a type and at least one group");
      int type = ParseIndex(line, 1, m.type_count, "type");
      if (seen_group[static_cast<std::size_t>(type)]) throw ParseError(line.number, "duplicate G line");
      seen_group[static_cast<std::size_t>(type)] = true;
      auto& groups = m.groups_of[static_cast<std::size_t>(type)];
      for (std::size_t t = 2; t < line.tokens.size(); ++t) {
        groups.push_back(ParseIndex(line, t, m.group_count, "group"));
      }
      std::sort(groups.begin(), groups.end());
      if (std::adjacent_find(groups.begin(), groups.end()) != groups.end()) {
        throw ValidationError("group ids not unique");
      }
    } else if (key == "T") {
      ExpectArity(line, 5);
      int type = ParseIndex(line, 1, m.type_count, "type");
      if (seen_bounds[static_cast<std::size_t>(type)]) throw ParseError(line.number, "duplicate T line");
      seen_bounds[static_cast<std::size_t>(type)] = true;
      m.bounds[static_cast<std::size_t>(type)] = {ParseCount(line, 2), ParseCount(line, 3), ParseCount(line, 4)};
    } else if (key == "SZ") {
      ExpectArity(line, 4);
      if (seen_sz) throw ParseError(line.number, "duplicate SZ line");
      seen_sz = true;
      m.max_small = ParseCount(line, 1);
      m.max_medium = ParseCount(line, 2);
      m.max_large = ParseCount(line, 3);
    } else if (key == "F") {
      ExpectArity(line, 4);
      int type = ParseIndex(line, 1, m.type_count, "type");
      int area = ParseIndex(line, 2, m.area_count, "area");
      if (!seen_fixed.emplace(type, area).second) throw ParseError(line.number, "duplicate F line");
      m.fixed_rent[static_cast<std::size_t>(type * m.area_count + area)] = ParseMoney(line, 3);
    } else if (key == "ATT") {
      ExpectArity(line, 4);
      int area = ParseIndex(line, 1, m.area_count, "area");
      int type = ParseIndex(line, 2, m.type_count, "type");
      if (!seen_att.emplace(area, type).second) throw ParseError(line.number, "duplicate ATT line");
      m.attractiveness[static_cast<std::size_t>(area * m.type_count + type)] = ParseMoney(line, 3);
    } else if (key == "CS") {
      ExpectArity(line, 3);
      int type = ParseIndex(line, 1, m.type_count, "type");
      if (seen_slope[static_cast<std::size_t>(type)]) throw ParseError(line.number, "duplicate CS line");
      seen_slope[static_cast<std::size_t>(type)] = true;
      m.count_slope[static_cast<std::size_t>(type)] = ParseMoney(line, 2);
    } else if (key == "SYN") {
      ExpectArity(line, 2);
      if (seen_syn) throw ParseError(line.number, "duplicate SYN line");
      seen_syn = true;
      m.synergy_bonus = ParseMoney(line, 1);
    } else if (key == "MALL") {
      throw ParseError(line.number, "duplicate MALL header");
    } else {
      throw ParseError(line.number, "unknown record '" + key + "'");
    }
  }
  for (std::size_t loc = 0; loc < m.area_of.size(); ++loc) {
    if (m.area_of[loc] == -1) throw ValidationError("missing A line for location " + std::to_string(loc));
  }
  for (std::size_t t = 0; t < types; ++t) {
    if (!seen_group[t]) throw ValidationError("type " + std::to_string(t) + " belongs to no group");
    if (!seen_bounds[t]) throw ValidationError("missing T line for type " + std::to_string(t));
  }
  ValidateMallInstance(m);
  return m;
}

MallInstance ParseMallInstance(std::istream& in) { return ParseMallInstance(ReadAll(in)); }

std::string RenderMallInstance(const MallInstance& m) {
  std::ostringstream out;
  out << "MALL " << m.location_count << ' ' << m.area_count << ' ' << m.type_count << ' '
      << m.group_count << '\n';
  for (int loc = 0; loc < m.location_count; ++loc) {
    out << "A " << loc << ' ' << m.area_of[static_cast<std::size_t>(loc)] << '\n';
  }
  for (int t = 0; t < m.type_count; ++t) {
    out << "G " << t;
    for (int g : m.groups_of[static_cast<std::size_t>(t)]) out << ' ' << g;
    out << '\n';
  }
  for (int t = 0; t < m.type_count; ++t) {
    const TypeBounds& b = m.bounds[static_cast<std::size_t>(t)];
    out << "T " << t << ' ' << b.min_count << ' ' << b.ideal_count << ' ' << b.max_count << '\n';
  }
  out << "SZ " << m.max_small << ' ' << m.max_medium << ' ' << m.max_large << '\n';
  for (int t = 0; t < m.type_count; ++t) {
    for (int a = 0; a < m.area_count; ++a) {
      if (m.FixedRent(t, a) != 0) out << "F " << t << ' ' << a << ' ' << FormatShortest(m.FixedRent(t, a)) << '\n';
    }
  }
  for (int a = 0; a < m.area_count; ++a) {
    for (int t = 0; t < m.type_count; ++t) {
      if (m.Attractiveness(a, t) != 0) {
        out << "ATT " << a << ' ' << t << ' ' << FormatShortest(m.Attractiveness(a, t)) << '\n';
      }
    }
  }
  for (int t = 0; t < m.type_count; ++t) {
    double v = m.count_slope[static_cast<std::size_t>(t)];
    if (v != 0) out << "CS " << t << ' ' << FormatShortest(v) << '\n';
  }
  out << "SYN " << FormatShortest(m.synergy_bonus) << '\n';
  return out.str();
}

MallAssignment FullMallAssignment(const MallInstance& instance, std::vector<int> shop_type) {
  MallAssignment a;
  a.areas.resize(static_cast<std::size_t>(instance.area_count));
  for (int i = 0; i < instance.area_count; ++i) a.areas[static_cast<std::size_t>(i)] = i;
  a.shop_type = std::move(shop_type);
  return a;
}

void CheckMallAssignment(const MallInstance& m, const MallAssignment& a) {
  if (a.shop_type.size() != static_cast<std::size_t>(m.location_count)) {
    throw ContractError("assignment length does not match location count");
  }
  std::vector<bool> in_scope(static_cast<std::size_t>(m.area_count), false);
  for (std::size_t i = 0; i < a.areas.size(); ++i) {
    int area = a.areas[i];
    if (area < 0 || area >= m.area_count || (i > 0 && area <= a.areas[i - 1])) {
      throw ContractError("assignment scope must be ascending, unique area ids");
    }
    in_scope[static_cast<std::size_t>(area)] = true;
  }
  for (std::size_t loc = 0; loc < a.shop_type.size(); ++loc) {
    const int type = a.shop_type[loc];
    if (in_scope[static_cast<std::size_t>(m.area_of[loc])]) {
      if (type < 0 || type >= m.type_count) {
        throw ContractError("location " + std::to_string(loc) + " in scope has no valid shop type");
      }
    } else if (type != kUnassigned) {
      throw ContractError("location " + std::to_string(loc) + " outside scope has a shop type");
    }
  }
}

namespace {

// locations_of[area][type] for areas in scope.
std::vector<int> CountByAreaType(const MallInstance& m, const MallAssignment& a) {
  std::vector<int> counts(static_cast<std::size_t>(m.area_count * m.type_count), 0);
  for (std::size_t loc = 0; loc < a.shop_type.size(); ++loc) {
    if (a.shop_type[loc] == kUnassigned) continue;
    ++counts[static_cast<std::size_t>(m.area_of[loc] * m.type_count + a.shop_type[loc])];
  }
  return counts;
}

void AppendShops(int type, int area, int n, std::vector<Shop>& out) {
  for (int i = 0; i < n / 3; ++i) out.push_back({type, area, SizeClass::kLarge});
  if (n % 3 == 2) out.push_back({type, area, SizeClass::kMedium});
  if (n % 3 == 1) out.push_back({type, area, SizeClass::kSmall});
}

double SynergyPairs(const MallInstance& m, const MallAssignment& a, int area) {
  int pairs = 0;
  int previous = -1;
  for (int loc = 0; loc < m.location_count; ++loc) {
    if (m.area_of[static_cast<std::size_t>(loc)] != area) continue;
    if (previous >= 0 &&
        m.TypesShareGroup(a.shop_type[static_cast<std::size_t>(previous)],
                          a.shop_type[static_cast<std::size_t>(loc)])) {
      ++pairs;
    }
    previous = loc;
  }
  return pairs;
}

// Shared body of MallRent / AreaSubRent over the areas in a.areas.
double RentOverScope(const MallInstance& m, const MallAssignment& a, bool present_types_only) {
  std::vector<Shop> shops = DeriveShops(m, a);
  double rent = 0;
  std::vector<int> shops_of_type(static_cast<std::size_t>(m.type_count), 0);
  for (const Shop& s : shops) {
    rent += m.FixedRent(s.type, s.area) +
            m.Attractiveness(s.area, s.type) * static_cast<double>(static_cast<int>(s.size));
    ++shops_of_type[static_cast<std::size_t>(s.type)];
  }
  for (int t = 0; t < m.type_count; ++t) {
    const int n = shops_of_type[static_cast<std::size_t>(t)];
    if (present_types_only && n == 0) continue;
    rent -= m.count_slope[static_cast<std::size_t>(t)] *
            std::abs(n - m.bounds[static_cast<std::size_t>(t)].ideal_count);
  }
  for (int area : a.areas) rent += m.synergy_bonus * SynergyPairs(m, a, area);
  return rent;
}

}  // namespace

std::vector<Shop> DeriveShops(const MallInstance& m, const MallAssignment& a) {
  CheckMallAssignment(m, a);
  std::vector<int> counts = CountByAreaType(m, a);
  std::vector<Shop> shops;
  for (int area : a.areas) {
    for (int t = 0; t < m.type_count; ++t) {
      AppendShops(t, area, counts[static_cast<std::size_t>(area * m.type_count + t)], shops);
    }
  }
  return shops;
}

double MallRent(const MallInstance& m, const MallAssignment& a) {
  if (a.areas.size() != static_cast<std::size_t>(m.area_count)) {
    throw ContractError("mall rent requires a full-scope assignment");
  }
  return RentOverScope(m, a, /*present_types_only=*/false);
}

double AreaSubRent(const MallInstance& m, const MallAssignment& a) {
  if (a.areas.size() != 1) throw ContractError("area sub-rent requires a single-area scope");
  return RentOverScope(m, a, /*present_types_only=*/true);
}

std::int64_t MallViolation(const MallInstance& m, const MallAssignment& a) {
  if (a.areas.size() != static_cast<std::size_t>(m.area_count)) {
    throw ContractError("mall violation requires a full-scope assignment");
  }
  std::vector<Shop> shops = DeriveShops(m, a);
  std::vector<int> shops_of_type(static_cast<std::size_t>(m.type_count), 0);
  int by_size[4] = {0, 0, 0, 0};
  for (const Shop& s : shops) {
    ++shops_of_type[static_cast<std::size_t>(s.type)];
    ++by_size[static_cast<int>(s.size)];
  }
  std::int64_t violation = 0;
  for (int t = 0; t < m.type_count; ++t) {
    const int n = shops_of_type[static_cast<std::size_t>(t)];
    const TypeBounds& b = m.bounds[static_cast<std::size_t>(t)];
    violation += std::max(0, b.min_count - n) + std::max(0, n - b.max_count);
  }
  violation += std::max(0, by_size[1] - m.max_small);
  violation += std::max(0, by_size[2] - m.max_medium);
  violation += std::max(0, by_size[3] - m.max_large);
  return violation;
}

GeneratedMallInstance GenerateMallInstance(MallGenParams params, std::uint64_t seed) {
  GeneratedMallInstance out;
  auto clamp_int = [&](int& value, int lo, int hi, const char* name) {
    int clamped = std::clamp(value, lo, hi);
    if (clamped != value) {
      out.clamped.push_back(std::string(name) + " clamped from " + std::to_string(value) +
                            " to " + std::to_string(clamped));
      value = clamped;
    }
  };
  clamp_int(params.location_count, 1, 100000, "location_count");
  clamp_int(params.area_count, 1, std::min(30, params.location_count), "area_count");
  if (params.standard_type_range) {
    clamp_int(params.type_count, 20, 50, "type_count");
  } else {
    clamp_int(params.type_count, 1, 100000, "type_count");
  }
  clamp_int(params.group_count, 1, 64, "group_count");
  if (!(params.tightness >= 0.0 && params.tightness <= 1.0)) {
    double clamped = std::isnan(params.tightness) ? 0.0 : std::clamp(params.tightness, 0.0, 1.0);
    out.clamped.push_back("tightness clamped from " + FormatShortest(params.tightness) + " to " +
                          FormatShortest(clamped));
    params.tightness = clamped;
  }

  Rng rng(MixSeed(seed, HashString("mall-instance")));
  MallInstance& m = out.instance;
  m.location_count = params.location_count;
  m.area_count = params.area_count;
  m.type_count = params.type_count;
  m.group_count = params.group_count;
  const auto types = static_cast<std::size_t>(m.type_count);

  // Contiguous areas of (nearly) equal size.
  m.area_of.resize(static_cast<std::size_t>(m.location_count));
  for (int loc = 0; loc < m.location_count; ++loc) {
    m.area_of[static_cast<std::size_t>(loc)] =
        static_cast<int>(static_cast<long long>(loc) * m.area_count / m.location_count);
  }

  m.groups_of.resize(types);
  for (auto& groups : m.groups_of) {
    groups.push_back(static_cast<int>(rng.UniformIndex(static_cast<std::size_t>(m.group_count))));
    if (m.group_count > 1 && rng.Bernoulli(0.3)) {
      int second = static_cast<int>(rng.UniformIndex(static_cast<std::size_t>(m.group_count - 1)));
      if (second >= groups.front()) ++second;
      groups.push_back(second);
    }
    std::sort(groups.begin(), groups.end());
  }

  // Planted layout: runs of one to three same-type locations.
  std::vector<int> planted(static_cast<std::size_t>(m.location_count));
  for (int loc = 0; loc < m.location_count;) {
    const int type = static_cast<int>(rng.UniformIndex(types));
    const int run = rng.UniformInt(1, 3);
    const int area = m.area_of[static_cast<std::size_t>(loc)];
    for (int i = 0; i < run && loc < m.location_count &&
                    m.area_of[static_cast<std::size_t>(loc)] == area;
         ++i, ++loc) {
      planted[static_cast<std::size_t>(loc)] = type;
    }
  }
  out.planted = FullMallAssignment(m, planted);

  // Bounds and caps leave (1 - tightness)-proportional slack around the
  // planted layout, which therefore satisfies all of them.
  m.bounds.resize(types);
  m.max_small = m.max_medium = m.max_large = m.location_count;
  const double slack_factor = 1.0 - params.tightness;
  std::vector<int> shops_of_type(types, 0);
  int by_size[4] = {0, 0, 0, 0};
  {
    std::vector<int> counts(static_cast<std::size_t>(m.area_count) * types, 0);
    for (int loc = 0; loc < m.location_count; ++loc) {
      ++counts[static_cast<std::size_t>(m.area_of[static_cast<std::size_t>(loc)]) * types +
               static_cast<std::size_t>(planted[static_cast<std::size_t>(loc)])];
    }
    std::vector<Shop> shops;
    for (int area = 0; area < m.area_count; ++area) {
      for (int t = 0; t < m.type_count; ++t) {
        AppendShops(t, area, counts[static_cast<std::size_t>(area) * types + static_cast<std::size_t>(t)], shops);
      }
    }
    for (const Shop& s : shops) {
      ++shops_of_type[static_cast<std::size_t>(s.type)];
      ++by_size[static_cast<int>(s.size)];
    }
  }
  for (std::size_t t = 0; t < types; ++t) {
    const int n = shops_of_type[t];
    const int slack = static_cast<int>(std::lround(slack_factor * (n + 2)));
    TypeBounds& b = m.bounds[t];
    b.min_count = std::max(0, n - slack);
    b.max_count = n + slack;
    b.ideal_count = std::clamp(n + rng.UniformInt(-1, 1), b.min_count, b.max_count);
  }
  auto cap = [&](int count) { return count + static_cast<int>(std::lround(slack_factor * (count + 2))); };
  m.max_small = cap(by_size[1]);
  m.max_medium = cap(by_size[2]);
  m.max_large = cap(by_size[3]);

  m.fixed_rent.resize(types * static_cast<std::size_t>(m.area_count));
  for (double& v : m.fixed_rent) v = rng.UniformInt(5, 30);
  m.attractiveness.resize(types * static_cast<std::size_t>(m.area_count));
  for (double& v : m.attractiveness) v = rng.UniformInt(0, 20);
  m.count_slope.resize(types);
  for (double& v : m.count_slope) v = rng.UniformInt(0, 10);
  m.synergy_bonus = rng.UniformInt(1, 5);

  ValidateMallInstance(m);
  return out;
}

}  // namespace pyramid_ga
