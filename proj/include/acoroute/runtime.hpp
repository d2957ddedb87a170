// Copyright 2026 The acoroute Authors
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

#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acoroute/acs.hpp"
#include "acoroute/errors.hpp"
#include "acoroute/pool.hpp"

namespace acoroute {

enum class Architecture : std::uint8_t { IAC, PA, PAwV };
enum class Precision : std::uint8_t { Single, Double };

inline const char* to_string(Architecture a) {
  switch (a) {
    case Architecture::IAC: return "iac";
    case Architecture::PA: return "pa";
    default: return "pawv";
  }
}

inline const char* to_string(Precision p) {
  return p == Precision::Single ? "f32" : "f64";
}

inline Architecture parse_architecture(const std::string& s) {
  std::string v = csv::lower(csv::trim(s));
  if (v == "iac") return Architecture::IAC;
  if (v == "pa") return Architecture::PA;
  if (v == "pawv") return Architecture::PAwV;
  throw ConfigError("unknown architecture '" + s + "' (iac|pa|pawv)");
}

inline Precision parse_precision(const std::string& s) {
  std::string v = csv::lower(csv::trim(s));
  if (v == "f32" || v == "single" || v == "float") return Precision::Single;
  if (v == "f64" || v == "double") return Precision::Double;
  throw ConfigError("unknown precision '" + s + "' (f32|f64)");
}

struct RunConfig {
  Architecture architecture = Architecture::PA;
  int parallel_instances = 1;
  int ants_per_instance = 1;   // 5 = the sequential-ant local-search variant
  long long solution_budget = 768000;
  std::uint64_t master_seed = 1;
  Precision precision = Precision::Double;
  int checkpoint_stride = 5;
  std::optional<double> time_limit_s;
  // Timing runs cap iterations directly instead of deriving from the budget.
  std::optional<long long> iteration_override;
  int workers = 0;             // 0 = hardware concurrency
  bool equivalence_mode = true;
  bool global_update_best_so_far = false;  // default: iteration best
  AcsParams acs;

  long long iteration_cap() const {
    if (iteration_override) return *iteration_override;
    return solution_budget /
           (static_cast<long long>(parallel_instances) * ants_per_instance);
  }

  void validate() const {
    acs.validate();
    if (parallel_instances < 1 || parallel_instances >= (1 << 20))
      throw ConfigError("parallel_instances out of range: " +
                        std::to_string(parallel_instances));
    if (ants_per_instance < 1 || ants_per_instance > 255)
      throw ConfigError("ants_per_instance out of range: " +
                        std::to_string(ants_per_instance));
    if (checkpoint_stride < 1)
      throw ConfigError("checkpoint_stride must be >= 1");
    if (iteration_cap() < 1)
      throw ConfigError(
          "solution budget " + std::to_string(solution_budget) +
          " admits no iteration at " + std::to_string(parallel_instances) +
          " instances x " + std::to_string(ants_per_instance) + " ants");
  }
};

struct RunResult {
  Assignment best_assignment;
  double best_total = std::numeric_limits<double>::infinity();
  double best_warehouse = 0;
  double best_transport = 0;
  int best_instance = -1;
  // (iteration, best cost so far) at stride multiples plus the final iteration
  std::vector<std::pair<long long, double>> convergence;
  long long iterations_executed = 0;
  double wall_time_per_iteration_s = 0;
  double total_wall_s = 0;
  std::vector<double> instance_bests;
  long long solutions_constructed = 0;
  // Constructions that dead-ended through every retry and fell back to the
  // greedy solution. Nonzero values flag a capacity-tight instance.
  long long stuck_fallbacks = 0;
  int workers_used = 1;
};

// Minimum total cost; ties go to the lowest index, so the result does not
// depend on which worker finished first.
template <typename Real>
inline std::size_t reduce_best_index(
    const std::vector<AntSolution<Real>>& candidates) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (candidates[i].cost.total < candidates[best].cost.total) best = i;
  return best;
}

template <typename Real>
inline const AntSolution<Real>& reduce_best(
    const std::vector<AntSolution<Real>>& candidates) {
  if (candidates.empty()) throw ConfigError("reduce_best: empty candidate list");
  return candidates[reduce_best_index(candidates)];
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename Real>
void record_point(std::vector<std::pair<long long, double>>& conv,
                  long long iter, Real best_total) {
  if (!conv.empty() && conv.back().first == iter) return;
  conv.emplace_back(iter, static_cast<double>(best_total));
}

// Instance candidate for one iteration: best of the instance's ants, each
// ant constructing from its own copy of the shared trails. An ant whose
// retries are exhausted reports the greedy solution instead of aborting the
// run; it walks no path, so the trails see nothing from it.
template <typename Real>
AntSolution<Real> run_instance_ants(const PheromoneModel<Real>& model,
                                    const ProblemInstance& inst,
                                    const RunConfig& cfg, std::uint32_t slot,
                                    std::uint32_t iteration,
                                    Workspace<Real>& ws, SelectPath path,
                                    long long& stuck_fallbacks) {
  AntSolution<Real> best;
  for (int ant = 0; ant < cfg.ants_per_instance; ++ant) {
    DrawKey key;
    key.master_seed = cfg.master_seed;
    key.instance = slot;
    key.ant = static_cast<std::uint32_t>(ant);
    key.iteration = iteration;
    AntSolution<Real> sol;
    try {
      sol = construct_with_retry<Real>(model, inst, key, ws, path,
                                       cfg.equivalence_mode, nullptr);
    } catch (const ConstructionStuck&) {
      sol.assignment = model.greedy_assignment;
      sol.cost = solution_cost<Real>(inst, sol.assignment);
      sol.seed_trace =
          (static_cast<std::uint64_t>(key.iteration) << 32) | key.packed();
      ++stuck_fallbacks;
    }
    if (ant == 0 || sol.cost.total < best.cost.total) best = std::move(sol);
  }
  return best;
}

// PA / PAwV: one shared model; construct in parallel from the same snapshot,
// barrier, reduce the iteration best, apply exactly one global update.
template <typename Real>
RunResult run_shared(const RunConfig& cfg, const ProblemInstance& inst,
                     SelectPath path) {
  RunResult res;
  auto t0 = Clock::now();
  {
    WorkerPool pool(resolve_workers(cfg.workers));
    res.workers_used = pool.size();
    PheromoneModel<Real> model = init_model<Real>(inst, cfg.acs);
    std::vector<Workspace<Real>> ws(pool.size());
    const int n = cfg.parallel_instances;
    std::vector<AntSolution<Real>> cand(n);
    std::vector<double> inst_best(n, std::numeric_limits<double>::infinity());
    std::vector<long long> stuck(n, 0);  // each slot touched by one item only
    AntSolution<Real> best;
    bool have_best = false;
    const long long cap = cfg.iteration_cap();

    for (long long iter = 1; iter <= cap; ++iter) {
      pool.parallel_for(static_cast<std::size_t>(n), [&](std::size_t i,
                                                         int w) {
        cand[i] = run_instance_ants<Real>(model, inst, cfg,
                                          static_cast<std::uint32_t>(i),
                                          static_cast<std::uint32_t>(iter),
                                          ws[w], path, stuck[i]);
      });
      res.solutions_constructed +=
          static_cast<long long>(n) * cfg.ants_per_instance;
      std::size_t bi = reduce_best_index(cand);
      for (int i = 0; i < n; ++i)
        inst_best[i] = std::min(inst_best[i],
                                static_cast<double>(cand[i].cost.total));
      if (!have_best || cand[bi].cost.total < best.cost.total) {
        best = cand[bi];
        res.best_instance = static_cast<int>(bi);
        have_best = true;
      }
      const AntSolution<Real>& source =
          cfg.global_update_best_so_far ? best : cand[bi];
      global_pheromone_update(model, source.assignment,
                              static_cast<double>(source.cost.total));
      res.iterations_executed = iter;
      if (iter % cfg.checkpoint_stride == 0)
        record_point(res.convergence, iter, best.cost.total);
      if (cfg.time_limit_s && seconds_since(t0) > *cfg.time_limit_s) break;
    }
    if (have_best) {
      record_point(res.convergence, res.iterations_executed, best.cost.total);
      res.best_assignment = best.assignment;
      res.best_total = static_cast<double>(best.cost.total);
      res.best_warehouse = static_cast<double>(best.cost.warehouse_total);
      res.best_transport = static_cast<double>(best.cost.transport_total);
    }
    for (long long s : stuck) res.stuck_fallbacks += s;
    res.instance_bests = std::move(inst_best);
  }
  res.total_wall_s = seconds_since(t0);
  if (res.iterations_executed > 0)
    res.wall_time_per_iteration_s =
        res.total_wall_s / static_cast<double>(res.iterations_executed);
  return res;
}

// IAC: fully independent colonies. Colonies advance in lockstep slices so a
// time limit cuts all of them at the same iteration, but nothing flows
// between them until the final reduction; the convergence trace is the
// retrospective cross-colony best.
template <typename Real>
RunResult run_iac_typed(const RunConfig& cfg, const ProblemInstance& inst) {
  RunResult res;
  auto t0 = Clock::now();
  {
    WorkerPool pool(resolve_workers(cfg.workers));
    res.workers_used = pool.size();
    const int n = cfg.parallel_instances;
    std::vector<PheromoneModel<Real>> models;
    models.reserve(n);
    models.push_back(init_model<Real>(inst, cfg.acs));
    for (int i = 1; i < n; ++i) models.push_back(models.front());
    std::vector<Workspace<Real>> ws(pool.size());
    std::vector<AntSolution<Real>> colony_best(n);
    std::vector<char> colony_has(n, 0);
    std::vector<long long> stuck(n, 0);
    // per colony, best-so-far at each recorded iteration
    std::vector<std::vector<double>> traces(n);
    std::vector<long long> trace_iters;
    const long long cap = cfg.iteration_cap();

    for (long long iter = 1; iter <= cap; ++iter) {
      pool.parallel_for(static_cast<std::size_t>(n), [&](std::size_t i,
                                                         int w) {
        AntSolution<Real> it_best = run_instance_ants<Real>(
            models[i], inst, cfg, static_cast<std::uint32_t>(i),
            static_cast<std::uint32_t>(iter), ws[w], SelectPath::Scalar,
            stuck[i]);
        if (!colony_has[i] || it_best.cost.total < colony_best[i].cost.total) {
          colony_best[i] = it_best;
          colony_has[i] = 1;
        }
        const AntSolution<Real>& source =
            cfg.global_update_best_so_far ? colony_best[i] : it_best;
        global_pheromone_update(models[i], source.assignment,
                                static_cast<double>(source.cost.total));
      });
      res.solutions_constructed +=
          static_cast<long long>(n) * cfg.ants_per_instance;
      res.iterations_executed = iter;
      bool last = iter == cap;
      if (cfg.time_limit_s && seconds_since(t0) > *cfg.time_limit_s)
        last = true;
      if (iter % cfg.checkpoint_stride == 0 || last) {
        if (trace_iters.empty() || trace_iters.back() != iter) {
          trace_iters.push_back(iter);
          for (int i = 0; i < n; ++i)
            traces[i].push_back(static_cast<double>(colony_best[i].cost.total));
        }
      }
      if (last) break;
    }

    for (long long s : stuck) res.stuck_fallbacks += s;
    std::size_t bi = reduce_best_index(colony_best);
    const AntSolution<Real>& best = colony_best[bi];
    res.best_assignment = best.assignment;
    res.best_total = static_cast<double>(best.cost.total);
    res.best_warehouse = static_cast<double>(best.cost.warehouse_total);
    res.best_transport = static_cast<double>(best.cost.transport_total);
    res.best_instance = static_cast<int>(bi);
    res.instance_bests.resize(n);
    for (int i = 0; i < n; ++i)
      res.instance_bests[i] = static_cast<double>(colony_best[i].cost.total);
    for (std::size_t t = 0; t < trace_iters.size(); ++t) {
      double m = traces[0][t];
      for (int i = 1; i < n; ++i) m = std::min(m, traces[i][t]);
      res.convergence.emplace_back(trace_iters[t], m);
    }
  }
  res.total_wall_s = seconds_since(t0);
  if (res.iterations_executed > 0)
    res.wall_time_per_iteration_s =
        res.total_wall_s / static_cast<double>(res.iterations_executed);
  return res;
}

template <typename Real>
RunResult run_typed(const RunConfig& cfg, const ProblemInstance& inst) {
  switch (cfg.architecture) {
    case Architecture::IAC:
      return run_iac_typed<Real>(cfg, inst);
    case Architecture::PA:
      return run_shared<Real>(cfg, inst, SelectPath::Scalar);
    default:
      return run_shared<Real>(cfg, inst, SelectPath::Vector);
  }
}

}  // namespace detail

inline RunResult run(const RunConfig& cfg, const ProblemInstance& inst) {
  cfg.validate();
  if (inst.orders.empty())
    throw ConfigError("cannot run on an instance with zero orders");
  return cfg.precision == Precision::Single
             ? detail::run_typed<float>(cfg, inst)
             : detail::run_typed<double>(cfg, inst);
}

inline RunResult run_iac(const RunConfig& cfg, const ProblemInstance& inst) {
  RunConfig c = cfg;
  c.architecture = Architecture::IAC;
  return run(c, inst);
}

inline RunResult run_pa(const RunConfig& cfg, const ProblemInstance& inst) {
  RunConfig c = cfg;
  c.architecture = Architecture::PA;
  return run(c, inst);
}

inline RunResult run_pawv(const RunConfig& cfg, const ProblemInstance& inst) {
  RunConfig c = cfg;
  c.architecture = Architecture::PAwV;
  return run(c, inst);
}

}  // namespace acoroute
