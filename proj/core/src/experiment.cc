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

#include "pyramid_ga/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "pyramid_ga/adapters.h"
#include "pyramid_ga/errors.h"
#include "pyramid_ga/rng.h"
#include "pyramid_ga/text_format.h"
#include "pyramid_ga/topology.h"

namespace pyramid_ga {

std::string_view ProblemName(ProblemKind kind) {
  return kind == ProblemKind::kNurse ? "nurse" : "mall";
}

std::optional<ProblemKind> ProblemFromName(std::string_view name) {
  if (name == "nurse") return ProblemKind::kNurse;
  if (name == "mall") return ProblemKind::kMall;
  return std::nullopt;
}

std::vector<std::uint64_t> DefaultSeeds() {
  return {11, 23, 37, 41, 59, 61, 73, 89, 97, 103, 127, 131, 149, 157, 163, 179, 181, 191, 211, 223};
}

EngineConfig ExperimentConfig::Engine() const {
  EngineConfig engine = problem == ProblemKind::kNurse ? DefaultNurseConfig() : DefaultMallConfig();
  for (const auto& [key, value] : engine_overrides) {
    if (key == "seed") throw ValidationError("engine.seed is set per run; use `seeds`");
    if (!ApplyEngineOverride(engine, key, value)) {
      throw ValidationError("unknown engine setting: " + key);
    }
  }
  ValidateEngineConfig(engine);
  return engine;
}

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitList(std::string_view value) {
  std::vector<std::string> out;
  std::string current;
  for (char c : value) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

bool ParseBool(std::string_view value, int line) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ParseError(line, "expected true or false");
}

int ParseIntSetting(std::string_view value, int line) {
  const long long v = ParseInteger(value, line);
  if (v < 0 || v > 1'000'000'000) throw ParseError(line, "value out of range");
  return static_cast<int>(v);
}

}  // namespace

ExperimentConfig ParseExperimentConfig(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  auto resolve = [&](std::string_view p) {
    std::filesystem::path path{std::string(p)};
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
  };
  bool seeds_given = false;
  std::optional<int> runs;
  int line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_number, "expected key = value");
    const std::string key{Trim(line.substr(0, eq))};
    const std::string_view value = Trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ParseError(line_number, "expected key = value");
    const int n = line_number;

    if (key == "problem") {
      auto kind = ProblemFromName(value);
      if (!kind) throw ParseError(n, "problem must be nurse or mall");
      cfg.problem = *kind;
    } else if (key == "instances") {
      for (const std::string& p : SplitList(value)) cfg.instance_paths.push_back(resolve(p));
    } else if (key == "strategies") {
      cfg.strategies.clear();
      for (const std::string& letter : SplitList(value)) {
        auto kind = StrategyFromLetter(letter);
        if (!kind) {
          throw ParseError(n, "unknown strategy '" + letter + "'; expected one of " +
                                  std::string(kStrategyLetters));
        }
        if (std::find(cfg.strategies.begin(), cfg.strategies.end(), *kind) == cfg.strategies.end()) {
          cfg.strategies.push_back(*kind);
        }
      }
    } else if (key == "seeds") {
      cfg.seeds.clear();
      for (const std::string& s : SplitList(value)) {
        const long long v = ParseInteger(s, n);
        if (v < 0) throw ParseError(n, "seeds must be non-negative");
        cfg.seeds.push_back(static_cast<std::uint64_t>(v));
      }
      seeds_given = true;
    } else if (key == "runs") {
      runs = ParseIntSetting(value, n);
    } else if (key.rfind("engine.", 0) == 0) {
      cfg.engine_overrides.emplace_back(key.substr(7), std::string(value));
    } else if (key == "records") {
      cfg.records_path = resolve(value);
    } else if (key == "report") {
      cfg.report_path = resolve(value);
    } else if (key == "timing") {
      cfg.timing = ParseBool(value, n);
    } else if (key == "generate.count") {
      cfg.generate.count = ParseIntSetting(value, n);
    } else if (key == "generate.seed") {
      cfg.generate.seed = static_cast<std::uint64_t>(ParseInteger(value, n));
    } else if (key == "generate.nurses") {
      cfg.generate.nurse.nurse_count = ParseIntSetting(value, n);
    } else if (key == "generate.patterns") {
      cfg.generate.nurse.pattern_count = ParseIntSetting(value, n);
    } else if (key == "generate.patterns_per_nurse") {
      cfg.generate.nurse.patterns_per_nurse = ParseIntSetting(value, n);
    } else if (key == "generate.headcount") {
      cfg.generate.nurse.emit_headcount = ParseBool(value, n);
    } else if (key == "generate.tightness") {
      cfg.generate.nurse.tightness = cfg.generate.mall.tightness = ParseDecimal(value, n);
    } else if (key == "generate.locations") {
      cfg.generate.mall.location_count = ParseIntSetting(value, n);
    } else if (key == "generate.areas") {
      cfg.generate.mall.area_count = ParseIntSetting(value, n);
    } else if (key == "generate.types") {
      cfg.generate.mall.type_count = ParseIntSetting(value, n);
    } else if (key == "generate.groups") {
      cfg.generate.mall.group_count = ParseIntSetting(value, n);
    } else if (key == "generate.type_range") {
      cfg.generate.mall.standard_type_range = ParseBool(value, n);
    } else {
      throw ParseError(n, "unknown key '" + key + "'");
    }
  }
  if (runs) {
    if (*runs < 1) throw ValidationError("runs must be at least 1");
    if (seeds_given && cfg.seeds.size() != static_cast<std::size_t>(*runs)) {
      throw ValidationError("runs does not match the number of seeds");
    }
    if (!seeds_given) {
      const std::vector<std::uint64_t> defaults = DefaultSeeds();
      cfg.seeds.clear();
      for (int i = 0; i < *runs; ++i) {
        cfg.seeds.push_back(i < static_cast<int>(defaults.size())
                                ? defaults[static_cast<std::size_t>(i)]
                                : MixSeed(defaults.back(), static_cast<std::uint64_t>(i)));
      }
    }
  }
  if (cfg.seeds.empty()) throw ValidationError("at least one seed is required");
  if (cfg.strategies.empty()) throw ValidationError("at least one strategy is required");
  if (cfg.instance_paths.empty() && cfg.generate.count < 1) {
    throw ValidationError("generate.count must be at least 1");
  }
  cfg.Engine();  // validates the overrides
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config " + path.string());
  return ParseExperimentConfig(ReadAll(in), path.parent_path());
}

std::string GeneratedInstanceId(ProblemKind kind, int index) {
  std::string number = std::to_string(index + 1);
  if (number.size() < 2) number.insert(0, 1, '0');
  return std::string(ProblemName(kind)) + "-" + number;
}

std::uint64_t GeneratedInstanceSeed(std::uint64_t base, int index) {
  return MixSeed(base, static_cast<std::uint64_t>(index));
}

std::vector<ExperimentInstance> LoadInstances(const ExperimentConfig& config) {
  std::vector<ExperimentInstance> out;
  if (config.instance_paths.empty()) {
    for (int i = 0; i < config.generate.count; ++i) {
      ExperimentInstance inst;
      inst.id = GeneratedInstanceId(config.problem, i);
      const std::uint64_t seed = GeneratedInstanceSeed(config.generate.seed, i);
      try {
        if (config.problem == ProblemKind::kNurse) {
          inst.nurse = std::make_shared<NurseInstance>(
              GenerateNurseInstance(config.generate.nurse, seed).instance);
        } else {
          inst.mall = std::make_shared<MallInstance>(
              GenerateMallInstance(config.generate.mall, seed).instance);
        }
      } catch (const std::exception& e) {
        throw ValidationError("instance " + inst.id + ": " + e.what());
      }
      out.push_back(std::move(inst));
    }
    return out;
  }
  for (const auto& path : config.instance_paths) {
    ExperimentInstance inst;
    inst.id = path.stem().string();
    if (inst.id.find_first_of(", \t") != std::string::npos) {
      throw ValidationError("instance " + path.string() + ": name must not contain commas or blanks");
    }
    try {
      std::ifstream in(path);
      if (!in) throw ValidationError("cannot open file");
      if (config.problem == ProblemKind::kNurse) {
        inst.nurse = std::make_shared<NurseInstance>(ParseNurseInstance(in));
      } else {
        inst.mall = std::make_shared<MallInstance>(ParseMallInstance(in));
      }
    } catch (const std::exception& e) {
      throw ValidationError("instance " + path.string() + ": " + e.what());
    }
    out.push_back(std::move(inst));
  }
  return out;
}

std::uint64_t RunSeed(std::uint64_t base_seed, std::string_view instance_id) {
  return MixSeed(base_seed, HashString(instance_id));
}

RunRecord RunOne(const ExperimentInstance& instance, ProblemKind problem, const EngineConfig& engine,
                 StrategyKind strategy, std::uint64_t base_seed, bool timing) {
  RunRecord record;
  record.problem = std::string(ProblemName(problem));
  record.instance = instance.id;
  record.strategy = StrategyLetter(strategy);
  record.seed = base_seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    EngineConfig config = engine;
    config.seed = RunSeed(base_seed, instance.id);
    RunResult result;
    if (problem == ProblemKind::kNurse) {
      if (!instance.nurse) throw ContractError("instance is not a nurse instance");
      NurseAdapter adapter(*instance.nurse);
      result = RunPyramid(adapter, BuildNurseTopology(config.main_size, config.subpop_size), config,
                          strategy);
    } else {
      if (!instance.mall) throw ContractError("instance is not a mall instance");
      MallAdapter adapter(*instance.mall);
      result = RunPyramid(
          adapter,
          BuildMallTopology(config.main_size, instance.mall->area_count, config.subpop_size),
          config, strategy);
    }
    record.feasible = result.feasible;
    if (result.feasible) record.best_value = result.best_value;
    record.generations = result.generations;
  } catch (const std::exception&) {
    record.feasible = false;
    record.best_value.reset();
    record.generations = 0;
    record.status = "error";
  }
  if (timing) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    record.wall_ms = std::chrono::duration<double, std::milli>(elapsed).count();
  }
  return record;
}

int ThreadsFromEnvironment() {
  const char* value = std::getenv("PYRAMID_GA_THREADS");
  if (value == nullptr || *value == '\0') return 0;
  try {
    const long long n = ParseInteger(value, 0);
    return n < 0 ? 0 : static_cast<int>(std::min<long long>(n, 1024));
  } catch (const ParseError&) {
    return 0;
  }
}

std::vector<RunRecord> RunExperiment(const ExperimentConfig& config,
                                     const std::vector<ExperimentInstance>& instances,
                                     std::optional<int> threads, const RunCallback& on_done) {
  const EngineConfig engine = config.Engine();
  struct Job {
    std::size_t instance;
    StrategyKind strategy;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (StrategyKind s : config.strategies) {
      for (std::uint64_t seed : config.seeds) jobs.push_back({i, s, seed});
    }
  }
  std::vector<RunRecord> records(jobs.size());
  std::mutex callback_mutex;
  auto run_job = [&](std::size_t j) {
    const Job& job = jobs[j];
    records[j] = RunOne(instances[job.instance], config.problem, engine, job.strategy, job.seed,
                        config.timing);
    if (on_done) {
      std::lock_guard<std::mutex> lock(callback_mutex);
      on_done(records[j]);
    }
  };
  const int workers = std::min<int>(threads.value_or(ThreadsFromEnvironment()),
                                    static_cast<int>(jobs.size()));
  if (workers <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
    return records;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t j = next++; j < jobs.size(); j = next++) run_job(j);
    });
  }
  for (std::thread& t : pool) t.join();
  return records;
}

PyramidTopology ExperimentTopology(const ExperimentConfig& config,
                                   const std::vector<ExperimentInstance>& instances) {
  const EngineConfig engine = config.Engine();
  if (config.problem == ProblemKind::kNurse) {
    return BuildNurseTopology(engine.main_size, engine.subpop_size);
  }
  const int areas = instances.empty() || !instances.front().mall ? config.generate.mall.area_count
                                                                 : instances.front().mall->area_count;
  return BuildMallTopology(engine.main_size, areas, engine.subpop_size);
}

std::string EchoExperiment(const ExperimentConfig& config,
                           const std::vector<ExperimentInstance>& instances) {
  std::string letters;
  for (StrategyKind s : config.strategies) {
    if (!letters.empty()) letters += ',';
    letters += StrategyLetter(s);
  }
  std::ostringstream out;
  out << "problem = " << ProblemName(config.problem) << '\n'
      << "instances = " << instances.size() << '\n'
      << "runs_per_instance = " << config.seeds.size() << '\n';
  EngineConfig engine = config.Engine();
  std::string echo = EchoEngineConfig(engine, ExperimentTopology(config, instances), letters);
  // The engine seed is per run; drop the placeholder line.
  if (auto pos = echo.find("seed = "); pos != std::string::npos) echo.erase(pos);
  out << echo << "seeds = ";
  for (std::size_t i = 0; i < config.seeds.size(); ++i) {
    out << (i ? "," : "") << config.seeds[i];
  }
  out << '\n';
  return out.str();
}

void WriteRecords(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kRecordHeader << '\n';
  for (const RunRecord& r : records) {
    out << r.problem << ',' << r.instance << ',' << r.strategy << ',' << r.seed << ','
        << (r.feasible ? "1" : "0") << ',' << (r.best_value ? FormatShortest(*r.best_value) : "")
        << ',' << r.generations << ',' << (r.wall_ms ? FormatFixed(*r.wall_ms, 3) : "") << ','
        << r.status << '\n';
  }
}

std::string RenderRecords(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  WriteRecords(out, records);
  return out.str();
}

std::vector<RunRecord> ParseRecords(std::string_view text) {
  std::vector<RunRecord> out;
  int line_number = 0;
  bool header_seen = false;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = Trim(text.substr(start, end - start));
    start = end + 1;
    ++line_number;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kRecordHeader) throw ParseError(line_number, "unexpected records header");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t field_start = 0;
    while (true) {
      const std::size_t comma = line.find(',', field_start);
      fields.push_back(line.substr(field_start, comma - field_start));
      if (comma == std::string_view::npos) break;
      field_start = comma + 1;
    }
    if (fields.size() != 9) throw ParseError(line_number, "expected 9 fields");
    RunRecord r;
    r.problem = std::string(fields[0]);
    if (!ProblemFromName(r.problem)) throw ParseError(line_number, "unknown problem");
    r.instance = std::string(fields[1]);
    if (r.instance.empty()) throw ParseError(line_number, "empty instance id");
    if (fields[2].size() != 1 || !StrategyFromLetter(fields[2])) {
      throw ParseError(line_number, "unknown strategy");
    }
    r.strategy = fields[2][0];
    const long long seed = ParseInteger(fields[3], line_number);
    if (seed < 0) throw ParseError(line_number, "negative seed");
    r.seed = static_cast<std::uint64_t>(seed);
    if (fields[4] != "0" && fields[4] != "1") throw ParseError(line_number, "feasible must be 0 or 1");
    r.feasible = fields[4] == "1";
    if (!fields[5].empty()) r.best_value = ParseDecimal(fields[5], line_number);
    if (r.feasible != r.best_value.has_value()) {
      throw ParseError(line_number, "best_value must be present iff feasible");
    }
    r.generations = static_cast<int>(ParseInteger(fields[6], line_number));
    if (!fields[7].empty()) r.wall_ms = ParseDecimal(fields[7], line_number);
    r.status = std::string(fields[8]);
    if (r.status != "ok" && r.status != "error") throw ParseError(line_number, "unknown status");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace pyramid_ga
