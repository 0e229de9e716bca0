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

#include "pyramid_ga/engine.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pyramid_ga/errors.h"
#include "pyramid_ga/operators.h"
#include "pyramid_ga/text_format.h"

namespace pyramid_ga {

EngineConfig DefaultNurseConfig() {
  EngineConfig c;
  c.main_size = 300;
  return c;
}

EngineConfig DefaultMallConfig() {
  EngineConfig c;
  c.main_size = 500;
  return c;
}

void ValidateEngineConfig(const EngineConfig& c) {
  auto rate = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(std::string(name) + " must lie in [0, 1]");
  };
  rate(c.uniform_gene_bias, "uniform_gene_bias");
  rate(c.assembly_share, "assembly_share");
  rate(c.mutation_rate, "mutation_rate");
  rate(c.replacement_fraction, "replacement_fraction");
  if (c.subpop_size < 1 || c.main_size < 1) throw ValidationError("population sizes must be positive");
  if (c.stop_patience < 1) throw ValidationError("stop_patience must be positive");
  if (c.max_generations < 0) throw ValidationError("max_generations must be non-negative");
  if (!(c.penalty_min > 0)) throw ValidationError("penalty_min must be positive");
  if (!(c.penalty_growth > 1)) throw ValidationError("penalty_growth must exceed 1");
  if (!(c.penalty_max >= c.penalty_min)) throw ValidationError("penalty_max must be >= penalty_min");
  if (c.candidate_count < 1) throw ValidationError("candidate_count must be positive");
  if (c.attractiveness_attempts < 1) throw ValidationError("attractiveness_attempts must be positive");
  if (c.torus_width < 1 || c.torus_height < 1) throw ValidationError("torus dimensions must be positive");
}

namespace {

double ParseRealValue(std::string_view key, std::string_view value) {
  try {
    return ParseDecimal(value, 0);
  } catch (const ParseError&) {
    throw ValidationError("engine setting " + std::string(key) + ": not a number");
  }
}

long long ParseIntValue(std::string_view key, std::string_view value) {
  try {
    return ParseInteger(value, 0);
  } catch (const ParseError&) {
    throw ValidationError("engine setting " + std::string(key) + ": not an integer");
  }
}

}  // namespace

bool ApplyEngineOverride(EngineConfig& c, std::string_view key, std::string_view value) {
  auto as_int = [&] { return static_cast<int>(ParseIntValue(key, value)); };
  auto as_real = [&] { return ParseRealValue(key, value); };
  if (key == "subpop_size") c.subpop_size = as_int();
  else if (key == "main_size") c.main_size = as_int();
  else if (key == "uniform_gene_bias") c.uniform_gene_bias = as_real();
  else if (key == "assembly_share") c.assembly_share = as_real();
  else if (key == "mutation_rate") c.mutation_rate = as_real();
  else if (key == "replacement_fraction") c.replacement_fraction = as_real();
  else if (key == "stop_patience") c.stop_patience = as_int();
  else if (key == "max_generations") c.max_generations = as_int();
  else if (key == "seed") c.seed = static_cast<std::uint64_t>(ParseIntValue(key, value));
  else if (key == "penalty_min") c.penalty_min = as_real();
  else if (key == "penalty_growth") c.penalty_growth = as_real();
  else if (key == "penalty_max") c.penalty_max = as_real();
  else if (key == "candidate_count") c.candidate_count = as_int();
  else if (key == "attractiveness_attempts") c.attractiveness_attempts = as_int();
  else if (key == "torus_width") c.torus_width = as_int();
  else if (key == "torus_height") c.torus_height = as_int();
  else return false;
  return true;
}

std::string EchoEngineConfig(const EngineConfig& c, const PyramidTopology& topology,
                             StrategyKind strategy) {
  return EchoEngineConfig(c, topology, std::string_view(std::string(1, StrategyLetter(strategy))));
}

std::string EchoEngineConfig(const EngineConfig& c, const PyramidTopology& topology,
                             std::string_view strategies) {
  std::ostringstream out;
  out << "strategy = " << strategies << '\n'
      << "population_total = " << topology.total_population() << '\n'
      << "population_split = " << topology.PopulationSplit() << '\n'
      << "subpop_size = " << c.subpop_size << '\n'
      << "main_size = " << c.main_size << '\n'
      << "uniform_gene_bias = " << FormatShortest(c.uniform_gene_bias) << '\n'
      << "assembly_share = " << FormatShortest(c.assembly_share) << '\n'
      << "mutation_rate = " << FormatShortest(c.mutation_rate) << '\n'
      << "replacement_fraction = " << FormatShortest(c.replacement_fraction) << '\n'
      << "stop_patience = " << c.stop_patience << '\n'
      << "max_generations = " << c.max_generations << '\n'
      << "penalty_min = " << FormatShortest(c.penalty_min) << '\n'
      << "penalty_growth = " << FormatShortest(c.penalty_growth) << '\n'
      << "penalty_max = " << FormatShortest(c.penalty_max) << '\n'
      << "candidate_count = " << c.candidate_count << '\n'
      << "attractiveness_attempts = " << c.attractiveness_attempts << '\n'
      << "torus_width = " << c.torus_width << '\n'
      << "torus_height = " << c.torus_height << '\n'
      << "seed = " << c.seed << '\n';
  return out.str();
}

PyramidEngine::PyramidEngine(const ProblemAdapter& problem, const PyramidTopology& topology,
                             EngineConfig config, StrategyKind strategy)
    : problem_(problem),
      topology_(strategy == StrategyKind::kJoined && !topology.joined ? ApplyJoined(topology)
                                                                      : topology),
      layout_(topology_, problem),
      config_(config),
      strategy_(strategy),
      direction_(problem.direction()),
      torus_(config.torus_width, config.torus_height),
      rng_(config.seed) {
  ValidateEngineConfig(config_);
  ValidateTopology(topology_);
  for (std::size_t i = 0; i < topology_.nodes.size(); ++i) {
    if (topology_.nodes[i].measure == Measure::kFull) full_nodes_.push_back(static_cast<int>(i));
  }
}

int PyramidEngine::EliteCount(int n) const {
  const int replaced = static_cast<int>(std::floor(config_.replacement_fraction * n + 1e-9));
  return n - std::clamp(replaced, 0, n);
}

Evaluation PyramidEngine::EvaluateNode(int node, std::span<const int> genome) const {
  const TopologyNode& n = topology_.nodes[static_cast<std::size_t>(node)];
  return problem_.Evaluate(n.parts, n.measure, genome);
}

void PyramidEngine::Initialize() {
  populations_.clear();
  populations_.resize(topology_.nodes.size());
  for (std::size_t u = 0; u < topology_.nodes.size(); ++u) {
    SubPopulation& pop = populations_[u];
    pop.node = static_cast<int>(u);
    pop.penalty = {config_.penalty_min, config_.penalty_growth, config_.penalty_min, config_.penalty_max};
    const auto domains = layout_.domains(static_cast<int>(u));
    pop.agents.resize(static_cast<std::size_t>(topology_.nodes[u].population_size));
    for (Agent& agent : pop.agents) {
      agent.genome.resize(domains.size());
      for (std::size_t g = 0; g < domains.size(); ++g) {
        agent.genome[g] = domains[g][rng_.UniformIndex(domains[g].size())];
      }
      agent.eval = EvaluateNode(static_cast<int>(u), agent.genome);
    }
    Rescore(pop, direction_);
  }
  generation_ = 0;
  stall_ = 0;
  history_.clear();
  best_full_ = Agent{};
  bool first = true;
  for (int u : full_nodes_) {
    for (const Agent& a : populations_[static_cast<std::size_t>(u)].agents) {
      if (first || LexicographicallyBetter(a.eval, best_full_.eval, direction_)) {
        best_full_ = a;
        first = false;
      }
    }
  }
  RecordGeneration();
}

std::vector<std::size_t> PyramidEngine::SelectElites(const SubPopulation& pop) const {
  const auto& agents = pop.agents;
  std::vector<std::size_t> order(agents.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (agents[a].score != agents[b].score) return agents[a].score < agents[b].score;
    if (agents[a].eval.violation != agents[b].eval.violation) {
      return agents[a].eval.violation < agents[b].eval.violation;
    }
    return a < b;
  });
  const int elite_count = EliteCount(static_cast<int>(agents.size()));
  order.resize(static_cast<std::size_t>(elite_count));
  if (elite_count > 0) {
    std::size_t lex_best = 0;
    for (std::size_t i = 1; i < agents.size(); ++i) {
      if (LexicographicallyBetter(agents[i].eval, agents[lex_best].eval, direction_)) lex_best = i;
    }
    if (std::find(order.begin(), order.end(), lex_best) == order.end()) order.back() = lex_best;
  }
  return order;
}

PyramidEngine::Child PyramidEngine::AssemblyChild(int u, const std::vector<SubPopulation>& parents,
                                                  const std::vector<RankWheel>& wheels,
                                                  const std::vector<std::size_t>& best_index,
                                                  std::optional<double>& best_known) {
  const TopologyNode& node = topology_.nodes[static_cast<std::size_t>(u)];
  const int d = PickDecomposition(node, rng_);
  const std::vector<int>& slots = node.decompositions[static_cast<std::size_t>(d)];
  std::vector<std::size_t> chosen(slots.size(), 0);
  chosen[0] = wheels[static_cast<std::size_t>(slots[0])].Draw(rng_);
  const int first_cell = torus_.CellOf(chosen[0]);
  const double weight = parents[static_cast<std::size_t>(u)].penalty.weight;

  auto genome_of = [&](std::size_t slot, std::size_t agent) -> std::span<const int> {
    return parents[static_cast<std::size_t>(slots[slot])].agents[agent].genome;
  };
  std::optional<Evaluation> last_eval;

  for (std::size_t j = 1; j < slots.size(); ++j) {
    const auto target = static_cast<std::size_t>(slots[j]);
    PartnerContext ctx;
    ctx.target = parents[target].agents;
    ctx.direction = direction_;
    ctx.rng = &rng_;
    ctx.wheel = &wheels[target];
    ctx.torus = torus_;
    ctx.first_parent_cell = first_cell;
    ctx.best_known = &best_known;
    ctx.candidate_count = config_.candidate_count;
    ctx.max_attempts = config_.attractiveness_attempts;
    std::vector<std::pair<std::size_t, Evaluation>> evaluated;
    // Slots after j are completed with their node's current best agent.
    std::vector<std::span<const int>> parts(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (s < j) parts[s] = genome_of(s, chosen[s]);
      else if (s > j) parts[s] = genome_of(s, best_index[static_cast<std::size_t>(slots[s])]);
    }
    Genome trial;
    ctx.combine = [&](std::size_t candidate) {
      parts[j] = genome_of(j, candidate);
      AssembleDecompositionInto(layout_, u, d, parts, trial);
      Evaluation e = EvaluateNode(u, trial);
      evaluated.emplace_back(candidate, e);
      return PenalizedValue(e, weight, direction_);
    };
    PartnerChoice choice = SelectPartner(strategy_, ctx);
    chosen[j] = choice.index;
    last_eval.reset();
    if (j + 1 == slots.size() && choice.combined_value.has_value()) {
      for (const auto& [candidate, e] : evaluated) {
        if (candidate == choice.index) last_eval = e;
      }
    }
  }

  std::vector<std::span<const int>> parts(slots.size());
  for (std::size_t s = 0; s < slots.size(); ++s) parts[s] = genome_of(s, chosen[s]);
  Child child{AssembleDecomposition(layout_, u, d, parts), last_eval, -1};
  if (strategy_ == StrategyKind::kDistributed) {
    child.target_cell = PlaceChildDistributed(torus_, first_cell, rng_);
  }
  return child;
}

void PyramidEngine::BreedNode(int u, const std::vector<SubPopulation>& parents,
                              const std::vector<RankWheel>& wheels,
                              const std::vector<std::size_t>& best_index,
                              std::vector<std::optional<double>>& best_known,
                              std::vector<Child>& children) {
  const TopologyNode& node = topology_.nodes[static_cast<std::size_t>(u)];
  const auto& own = parents[static_cast<std::size_t>(u)].agents;
  const std::size_t wanted =
      own.size() - static_cast<std::size_t>(EliteCount(static_cast<int>(own.size())));
  const bool cross_node = topology_.joined && topology_.nodes.size() > 1;
  while (children.size() < wanted) {
    if (!node.is_leaf() && rng_.Bernoulli(config_.assembly_share)) {
      children.push_back(AssemblyChild(u, parents, wheels, best_index,
                                       best_known[static_cast<std::size_t>(u)]));
      continue;
    }
    const std::size_t first = wheels[static_cast<std::size_t>(u)].Draw(rng_);
    std::span<const int> mate;
    if (cross_node && rng_.Bernoulli(config_.assembly_share)) {
      // Joined: pair with a rank-selected agent of another node.
      std::size_t other = rng_.UniformIndex(topology_.nodes.size() - 1);
      if (other >= static_cast<std::size_t>(u)) ++other;
      mate = parents[other].agents[wheels[other].Draw(rng_)].genome;
    } else {
      mate = own[wheels[static_cast<std::size_t>(u)].Draw(rng_)].genome;
    }
    auto [a, b] = UniformCrossover(own[first].genome, mate, config_.uniform_gene_bias, rng_);
    children.push_back({std::move(a), std::nullopt, -1});
    if (children.size() < wanted) children.push_back({std::move(b), std::nullopt, -1});
  }
  const auto domains = layout_.domains(u);
  for (Child& child : children) {
    if (MutateInPlace(child.genome, domains, config_.mutation_rate, rng_) > 0 || !child.eval) {
      child.eval = EvaluateNode(u, child.genome);
    }
  }
}

SubPopulation PyramidEngine::Replace(const SubPopulation& parent, std::vector<std::size_t> elites,
                                     std::vector<Child> children) const {
  SubPopulation next;
  next.node = parent.node;
  next.penalty = parent.penalty;
  if (strategy_ != StrategyKind::kDistributed) {
    next.agents.reserve(parent.agents.size());
    for (std::size_t e : elites) next.agents.push_back(parent.agents[e]);
    for (Child& c : children) next.agents.push_back({std::move(c.genome), *c.eval, 0.0});
    return next;
  }
  // Distributed: agents keep their grid cells; each child overwrites the
  // worst replaceable agent of its target cell, or the worst replaceable
  // agent anywhere when that cell has none left.
  next.agents = parent.agents;
  std::vector<bool> open(parent.agents.size(), true);
  for (std::size_t e : elites) open[e] = false;
  auto worse = [&](std::size_t a, std::size_t b) {
    const Agent& x = parent.agents[a];
    const Agent& y = parent.agents[b];
    return x.score != y.score ? x.score > y.score : a > b;
  };
  for (Child& c : children) {
    std::optional<std::size_t> slot;
    for (int pass = 0; pass < 2 && !slot; ++pass) {
      for (std::size_t i = 0; i < open.size(); ++i) {
        if (!open[i]) continue;
        if (pass == 0 && (c.target_cell < 0 || torus_.CellOf(i) != c.target_cell)) continue;
        if (!slot || worse(i, *slot)) slot = i;
      }
    }
    open[*slot] = false;
    next.agents[*slot] = {std::move(c.genome), *c.eval, 0.0};
  }
  return next;
}

void PyramidEngine::Step() {
  if (!initialized()) Initialize();
  const std::vector<SubPopulation>& parents = populations_;
  std::vector<RankWheel> wheels;
  std::vector<std::size_t> best_index;
  std::vector<std::optional<double>> best_known;
  for (const SubPopulation& pop : parents) {
    wheels.emplace_back(pop.agents);
    best_index.push_back(BestByScore(pop.agents));
    best_known.emplace_back(
        PenalizedValue(pop.agents[best_index.back()].eval, pop.penalty.weight, direction_));
  }
  std::vector<SubPopulation> next;
  next.reserve(parents.size());
  for (std::size_t u = 0; u < parents.size(); ++u) {
    std::vector<Child> children;
    BreedNode(static_cast<int>(u), parents, wheels, best_index, best_known, children);
    next.push_back(Replace(parents[u], SelectElites(parents[u]), std::move(children)));
  }
  for (SubPopulation& pop : next) {
    Rescore(pop, direction_);
    pop.penalty = UpdatePenalty(pop.penalty, pop.agents, direction_);
    Rescore(pop, direction_);
  }
  populations_ = std::move(next);
  ++generation_;

  bool improved = false;
  for (int u : full_nodes_) {
    for (const Agent& a : populations_[static_cast<std::size_t>(u)].agents) {
      if (LexicographicallyBetter(a.eval, best_full_.eval, direction_)) {
        best_full_ = a;
        improved = true;
      }
    }
  }
  stall_ = improved ? 0 : stall_ + 1;
  RecordGeneration();
}

void PyramidEngine::RecordGeneration() {
  history_.push_back({generation_, best_full_.eval.violation, best_full_.eval.raw,
                      populations_[static_cast<std::size_t>(topology_.top)].penalty.weight});
}

RunResult PyramidEngine::Run() {
  if (!initialized()) Initialize();
  while (generation_ < config_.max_generations && stall_ < config_.stop_patience) Step();
  RunResult result;
  result.best_eval = best_full_.eval;
  result.feasible = best_full_.eval.feasible();
  result.best_value = best_full_.eval.raw;
  result.best_assignment.assign(static_cast<std::size_t>(problem_.position_count()), kUnassigned);
  std::span<const int> positions = layout_.positions(topology_.top);
  for (std::size_t i = 0; i < positions.size() && i < best_full_.genome.size(); ++i) {
    result.best_assignment[static_cast<std::size_t>(positions[i])] = best_full_.genome[i];
  }
  result.generations = generation_;
  result.history = history_;
  result.attractiveness_attempt_cap = config_.attractiveness_attempts;
  return result;
}

RunResult RunPyramid(const ProblemAdapter& problem, const PyramidTopology& topology,
                     const EngineConfig& config, StrategyKind strategy) {
  PyramidEngine engine(problem, topology, config, strategy);
  return engine.Run();
}

}  // namespace pyramid_ga
