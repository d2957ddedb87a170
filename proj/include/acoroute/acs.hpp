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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "acoroute/cost.hpp"
#include "acoroute/errors.hpp"
#include "acoroute/instance.hpp"
#include "acoroute/kernels.hpp"
#include "acoroute/rng.hpp"

namespace acoroute {

enum class HeuristicKind : std::uint8_t {
  WeightOverGap,  // (w + eps) / F
  GapOverWeight,  // F / (w + eps), the inverse reading
};

// eta positivity guard: zero-weight orders keep a selectable probability
inline constexpr double kEtaEpsilonKg = 1e-6;

struct AcsParams {
  double evaporation_rho = 0.1;
  double alpha = 1.0;
  double beta = 8.0;
  double q0 = 0.9;
  double tau0 = 0;           // <= 0 means auto: 1 / max(l, 1)
  double deposit_scale = 1.0;
  HeuristicKind heuristic = HeuristicKind::WeightOverGap;

  void validate() const {
    if (!(evaporation_rho > 0 && evaporation_rho < 1))
      throw ConfigError("evaporation_rho must be in (0,1), got " +
                        std::to_string(evaporation_rho));
    if (alpha < 0) throw ConfigError("alpha must be nonnegative");
    if (beta < 0) throw ConfigError("beta must be nonnegative");
    if (!(q0 >= 0 && q0 <= 1))
      throw ConfigError("q0 must be in [0,1], got " + std::to_string(q0));
    if (deposit_scale <= 0) throw ConfigError("deposit_scale must be positive");
  }
};

inline double heuristic_value_raw(const Order& order, const RouteOption& opt,
                                  const ProblemInstance& inst,
                                  HeuristicKind kind) {
  if (opt.is_crf()) return 1.0;  // transport cost identically 0: uniform eta
  double f = inst.lanes[opt.lane_index].max_upper_kg;
  double w = order.weight_kg + kEtaEpsilonKg;
  return kind == HeuristicKind::WeightOverGap ? w / f : f / w;
}

template <typename Real>
inline Real heuristic_value(const Order& order, const RouteOption& opt,
                            const ProblemInstance& inst,
                            HeuristicKind kind = HeuristicKind::WeightOverGap) {
  return static_cast<Real>(heuristic_value_raw(order, opt, inst, kind));
}

template <typename Real>
struct AntSolution {
  Assignment assignment;
  CostBreakdown<Real> cost;
  std::uint64_t seed_trace = 0;  // (iteration << 32) | packed stream id
};

template <typename Real>
struct PheromoneModel {
  AcsParams params;
  std::vector<std::size_t> offset;       // l + 1 prefix over route options
  std::vector<RouteOption> options_flat; // contiguous copy for the hot loop
  std::vector<Real> tau;                 // flattened global trails
  std::vector<Real> eta;                 // raw heuristic values
  // eta^beta, max-normalized per order row. Normalization rescales a row by
  // a positive constant, which changes neither the argmax nor the roulette
  // distribution, but keeps the row maximum at 1 so a feasible row can never
  // underflow to all-zero choice values in single precision.
  std::vector<Real> eta_pow;
  double tau0 = 0;         // resolved (auto or from params)
  double greedy_cost = 0;  // normalization baseline for deposits
  Assignment greedy_assignment;

  std::size_t n_orders() const { return offset.empty() ? 0 : offset.size() - 1; }
  std::size_t row_len(std::size_t k) const { return offset[k + 1] - offset[k]; }
};

// ACS local rule: decay toward tau0. Contraction with factor (1 - rho),
// fixed point tau0, stays positive.
template <typename Real>
inline Real local_pheromone_update(Real tau_old, const AcsParams& p,
                                   double tau0) {
  return static_cast<Real>(1.0 - p.evaporation_rho) * tau_old +
         static_cast<Real>(p.evaporation_rho * tau0);
}

template <typename Real>
struct LocalUpdate {
  std::size_t flat_index;
  Real new_value;
};

// Running feasibility state: per-warehouse order counts, per-line weights,
// and the construction cursor.
// Weights are double regardless of the cost precision so that a
// construction-feasible assignment is check_constraints-feasible exactly
// (both sides accumulate the same doubles in the same order).
struct ConstructionState {
  std::vector<long long> warehouse_counts;
  std::vector<double> line_weights;
  std::size_t order_cursor = 0;

  void reset(const ProblemInstance& inst) {
    warehouse_counts.assign(inst.warehouses.size(), 0);
    line_weights.assign(inst.lanes.size(), 0.0);
    order_cursor = 0;
  }

  bool admits(const ProblemInstance& inst, const Order& order,
              const RouteOption& opt) const {
    const Warehouse& wh = inst.warehouses[opt.warehouse_index];
    if (warehouse_counts[opt.warehouse_index] >= wh.daily_capacity_orders)
      return false;
    if (opt.is_crf()) return true;
    const Lane& lane = inst.lanes[opt.lane_index];
    return line_weights[opt.lane_index] + order.weight_kg <= lane.max_upper_kg;
  }

  void place(const ProblemInstance& inst, const Order& order,
             const RouteOption& opt) {
    ++warehouse_counts[opt.warehouse_index];
    if (!opt.is_crf()) line_weights[opt.lane_index] += order.weight_kg;
    ++order_cursor;
  }
};

// Pseudo-random-proportional rule on one prepared choice row.
template <typename Real, typename Rng>
inline std::size_t select_route(const Real* values, std::size_t n, double q0,
                                Rng&& rng) {
  double u = rng();
  if (u <= q0) {
    std::size_t i = kernels::reduce_max_index_scalar(values, n);
    if (!(values[i] > 0))
      throw AllMasked("select_route: all choice values are zero");
    return i;
  }
  return kernels::scan_roulette(values, n, rng());
}

template <typename Real, typename Rng>
inline std::size_t select_route(const std::vector<Real>& values, double q0,
                                Rng&& rng) {
  return select_route(values.data(), values.size(), q0,
                      std::forward<Rng>(rng));
}

// Per-worker scratch; reused across ants to keep the hot loop allocation-free.
template <typename Real>
struct Workspace {
  std::vector<Real> working_tau;
  std::vector<Real> mask;
  std::vector<Real> choice;
  ConstructionState state;
};

namespace detail {

template <typename Real>
PheromoneModel<Real> build_model_skeleton(const ProblemInstance& inst,
                                          const AcsParams& params) {
  params.validate();
  PheromoneModel<Real> m;
  m.params = params;
  m.offset.resize(inst.orders.size() + 1);
  m.offset[0] = 0;
  for (std::size_t k = 0; k < inst.orders.size(); ++k)
    m.offset[k + 1] = m.offset[k] + inst.route_options[k].size();
  std::size_t total = m.offset.back();
  m.options_flat.reserve(total);
  m.eta.resize(total);
  m.eta_pow.resize(total);
  for (std::size_t k = 0; k < inst.orders.size(); ++k) {
    const auto& opts = inst.route_options[k];
    double emax = 0;
    for (const auto& opt : opts)
      emax = std::max(emax, heuristic_value_raw(inst.orders[k], opt, inst,
                                                params.heuristic));
    for (std::size_t r = 0; r < opts.size(); ++r) {
      double e = heuristic_value_raw(inst.orders[k], opts[r], inst,
                                     params.heuristic);
      std::size_t idx = m.offset[k] + r;
      m.eta[idx] = static_cast<Real>(e);
      m.eta_pow[idx] = static_cast<Real>(std::pow(e / emax, params.beta));
      m.options_flat.push_back(opts[r]);
    }
  }
  m.tau0 = params.tau0 > 0
               ? params.tau0
               : 1.0 / static_cast<double>(std::max<std::size_t>(
                     inst.orders.size(), 1));
  m.tau.assign(total, static_cast<Real>(m.tau0));
  return m;
}

enum class SelectPath { Scalar, Vector };

// One full construction pass. force_exploit short-circuits the q0 gate and
// consumes no draws (used by greedy_solution). The underflow fallback below
// can only trigger in single precision, when every unmasked eta_pow times tau
// rounds to zero; it deterministically picks the admissible option with the
// largest eta_pow, which is where virtually all of the true probability mass
// sits in that regime.
template <typename Real>
AntSolution<Real> construct_core(const PheromoneModel<Real>& model,
                                 const ProblemInstance& inst,
                                 const DrawKey& key, Workspace<Real>& ws,
                                 SelectPath path, bool equivalence_roulette,
                                 bool force_exploit,
                                 std::vector<LocalUpdate<Real>>* trace) {
  const AcsParams& p = model.params;
  std::size_t l = inst.orders.size();
  std::size_t max_row = 0;
  for (std::size_t k = 0; k < l; ++k)
    max_row = std::max(max_row, model.row_len(k));
  ws.working_tau.assign(model.tau.begin(), model.tau.end());
  if (ws.mask.size() < max_row) ws.mask.resize(max_row);
  if (ws.choice.size() < max_row) ws.choice.resize(max_row);
  ws.state.reset(inst);
  if (trace) trace->clear();

  AntSolution<Real> sol;
  sol.assignment.choices.assign(l, -1);

  for (std::size_t k = 0; k < l; ++k) {
    const Order& order = inst.orders[k];
    std::size_t off = model.offset[k];
    std::size_t len = model.row_len(k);
    bool any = false;
    for (std::size_t r = 0; r < len; ++r) {
      bool ok = ws.state.admits(inst, order, model.options_flat[off + r]);
      ws.mask[r] = ok ? Real(1) : Real(0);
      any = any || ok;
    }
    if (!any) throw DeadEnd(order.order_id, k);

    if (path == SelectPath::Vector) {
      kernels::build_choice_vector_pow(ws.working_tau.data() + off,
                                       model.eta_pow.data() + off,
                                       ws.mask.data(), ws.choice.data(), len,
                                       p.alpha);
    } else {
      kernels::build_choice_vector_pow_scalar(ws.working_tau.data() + off,
                                              model.eta_pow.data() + off,
                                              ws.mask.data(), ws.choice.data(),
                                              len, p.alpha);
    }

    OrderDraws draws{&key, static_cast<std::uint32_t>(k)};
    std::size_t pick = len;  // sentinel
    bool exploit = force_exploit || draws() <= p.q0;
    if (exploit) {
      pick = path == SelectPath::Vector
                 ? kernels::reduce_max_index(ws.choice.data(), len)
                 : kernels::reduce_max_index_scalar(ws.choice.data(), len);
      if (!(ws.choice[pick] > 0)) pick = len;  // underflowed row
    } else {
      double u = draws();
      try {
        pick = (path == SelectPath::Vector && !equivalence_roulette)
                   ? kernels::scan_roulette_blocked(ws.choice.data(), len, u)
                   : kernels::scan_roulette(ws.choice.data(), len, u);
      } catch (const AllMasked&) {
        pick = len;  // underflowed row
      }
    }
    if (pick == len) {
      // single-precision underflow fallback: argmax eta_pow over admissible
      for (std::size_t r = 0; r < len; ++r) {
        if (!(ws.mask[r] > 0)) continue;
        if (pick == len || model.eta_pow[off + r] > model.eta_pow[off + pick])
          pick = r;
      }
    }

    const RouteOption& chosen = model.options_flat[off + pick];
    sol.assignment.choices[k] = static_cast<std::int32_t>(pick);
    ws.state.place(inst, order, chosen);
    Real updated = local_pheromone_update(ws.working_tau[off + pick], p,
                                          model.tau0);
    ws.working_tau[off + pick] = updated;
    if (trace) trace->push_back({off + pick, updated});
  }

  sol.assignment.complete = true;
  sol.cost = solution_cost<Real>(inst, sol.assignment);
  sol.seed_trace =
      (static_cast<std::uint64_t>(key.iteration) << 32) | key.packed();
  return sol;
}

// Dead-end policy: abort the ant, reconstruct on the next retry substream,
// give up after 10 consecutive dead ends (the retry id has 4 bits in the
// packed stream). The runtime substitutes the greedy solution for ants that
// give up; callers constructing directly see the exception.
template <typename Real>
AntSolution<Real> construct_with_retry(const PheromoneModel<Real>& model,
                                       const ProblemInstance& inst,
                                       const DrawKey& key, Workspace<Real>& ws,
                                       SelectPath path,
                                       bool equivalence_roulette,
                                       std::vector<LocalUpdate<Real>>* trace) {
  DrawKey k = key;
  for (std::uint32_t retry = 0;; ++retry) {
    k.retry = retry;
    try {
      return construct_core<Real>(model, inst, k, ws, path,
                                  equivalence_roulette, false, trace);
    } catch (const DeadEnd& e) {
      if (retry + 1 >= 10)
        throw ConstructionStuck("10 consecutive dead ends, last at order " +
                                e.order_id);
    }
  }
}

}  // namespace detail

template <typename Real>
PheromoneModel<Real> init_model(const ProblemInstance& inst,
                                const AcsParams& params = {}) {
  PheromoneModel<Real> m = detail::build_model_skeleton<Real>(inst, params);
  if (inst.orders.empty()) {
    m.greedy_cost = 0;
    m.greedy_assignment.complete = true;
    return m;
  }
  Workspace<Real> ws;
  DrawKey dummy;
  AntSolution<Real> greedy = detail::construct_core<Real>(
      m, inst, dummy, ws, detail::SelectPath::Scalar, true,
      /*force_exploit=*/true, nullptr);
  m.greedy_cost = static_cast<double>(greedy.cost.total);
  m.greedy_assignment = greedy.assignment;
  return m;
}

// Deterministic baseline: pure exploitation on uniform trails, i.e. max-eta
// per order under the running feasibility masks. Also the anchor for deposit
// normalization.
template <typename Real>
AntSolution<Real> greedy_solution(const ProblemInstance& inst,
                                  const AcsParams& params = {}) {
  PheromoneModel<Real> m = detail::build_model_skeleton<Real>(inst, params);
  if (inst.orders.empty()) {
    AntSolution<Real> empty;
    empty.assignment.complete = true;
    return empty;
  }
  Workspace<Real> ws;
  DrawKey dummy;
  return detail::construct_core<Real>(m, inst, dummy, ws,
                                      detail::SelectPath::Scalar, true,
                                      /*force_exploit=*/true, nullptr);
}

template <typename Real>
AntSolution<Real> construct_solution(
    const PheromoneModel<Real>& model, const ProblemInstance& inst,
    const DrawKey& key, Workspace<Real>& ws,
    std::vector<LocalUpdate<Real>>* trace = nullptr) {
  return detail::construct_with_retry<Real>(
      model, inst, key, ws, detail::SelectPath::Scalar, true, trace);
}

template <typename Real>
AntSolution<Real> construct_solution(
    const PheromoneModel<Real>& model, const ProblemInstance& inst,
    const DrawKey& key, std::vector<LocalUpdate<Real>>* trace = nullptr) {
  Workspace<Real> ws;
  return construct_solution(model, inst, key, ws, trace);
}

// Best-only reinforcement toward delta = deposit_scale * greedy / best.
// Entries off the best solution are untouched: ACS evaporates through the
// local rule, not globally.
template <typename Real>
void global_pheromone_update(PheromoneModel<Real>& model,
                             const Assignment& best, double best_total) {
  const AcsParams& p = model.params;
  double ratio = (model.greedy_cost > 0 && best_total > 0)
                     ? model.greedy_cost / best_total
                     : 1.0;  // degenerate zero-cost instances anchor at 1
  double delta = p.deposit_scale * ratio;
  Real omr = static_cast<Real>(1.0 - p.evaporation_rho);
  Real rd = static_cast<Real>(p.evaporation_rho * delta);
  for (std::size_t k = 0; k < model.n_orders(); ++k) {
    std::size_t idx = model.offset[k] + best.choices[k];
    model.tau[idx] = omr * model.tau[idx] + rd;
  }
}

}  // namespace acoroute
