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
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "acoroute/acs.hpp"
#include "acoroute/cost.hpp"
#include "acoroute/errors.hpp"
#include "acoroute/instance.hpp"
#include "acoroute/rng.hpp"

namespace acoroute {

struct GenSpec {
  int n_orders = 3;
  int n_warehouses = 2;
  int n_ports = 2;
  int n_couriers = 2;
  int n_bands_per_lane = 2;
  int n_products = 3;
  int n_customers = 3;
  std::pair<double, double> weight_range_kg = {5.0, 500.0};
  std::pair<long long, long long> capacity_range = {2, 4};
  std::pair<double, double> rate_range = {0.5, 3.0};
  std::pair<double, double> storage_rate_range = {0.5, 3.0};
  double ground_fraction = 0.4;
  double crf_fraction = 0.15;
  double vmi_fraction = 0.2;
  // Relative spread of lane weight caps F. Kept small by default: with the
  // high default beta, wide F spreads give the heuristic term astronomically
  // more say than trails can ever earn back, and search degenerates to
  // greedy-with-noise on desk-scale instances.
  double lane_max_spread = 0.05;
  std::uint64_t seed = 1;

  void validate() const {
    if (n_orders < 1 || n_warehouses < 1 || n_ports < 1 || n_couriers < 1 ||
        n_bands_per_lane < 1 || n_products < 1 || n_customers < 1)
      throw ConfigError("GenSpec counts must all be >= 1");
    auto prob = [](double p) { return p >= 0 && p <= 1; };
    if (!prob(ground_fraction) || !prob(crf_fraction) || !prob(vmi_fraction))
      throw ConfigError("GenSpec fractions must be in [0,1]");
    if (weight_range_kg.first < 0 ||
        weight_range_kg.second < weight_range_kg.first)
      throw ConfigError("GenSpec weight range invalid");
    if (capacity_range.first < 1 ||
        capacity_range.second < capacity_range.first)
      throw ConfigError("GenSpec capacity range invalid");
    if (rate_range.first < 0 || rate_range.second < rate_range.first)
      throw ConfigError("GenSpec rate range invalid");
  }
};

namespace gen_detail {

inline std::string tag(const char* prefix, int i) {
  return std::string(prefix) + std::to_string(i);
}

}  // namespace gen_detail

inline ProblemInstance generate_instance(const GenSpec& spec) {
  spec.validate();
  Sm64 rng(mix64(spec.seed, 0x67656e5f763100ull));

  ProblemInstance inst;
  const std::string dest = "DST";

  std::vector<std::string> ports, products, customers;
  for (int i = 0; i < spec.n_ports; ++i)
    ports.push_back(gen_detail::tag("P", i));
  for (int i = 0; i < spec.n_products; ++i)
    products.push_back(gen_detail::tag("PROD", i));
  for (int i = 0; i < spec.n_customers; ++i)
    customers.push_back(gen_detail::tag("CUST", i));

  for (int i = 0; i < spec.n_warehouses; ++i) {
    Warehouse wh;
    wh.warehouse_id = gen_detail::tag("W", i);
    wh.daily_capacity_orders =
        spec.capacity_range.first +
        static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(
            spec.capacity_range.second - spec.capacity_range.first + 1)));
    wh.storage_rate_per_unit =
        rng.next_in(spec.storage_rate_range.first, spec.storage_rate_range.second);
    for (const auto& p : ports)
      if (rng.next_unit() < 0.75) wh.allowed_ports.insert(p);
    if (wh.allowed_ports.empty())
      wh.allowed_ports.insert(ports[rng.next_below(ports.size())]);
    for (const auto& p : products)
      if (rng.next_unit() < 0.8) wh.supported_products.insert(p);
    if (wh.supported_products.empty())
      wh.supported_products.insert(products[rng.next_below(products.size())]);
    if (rng.next_unit() < spec.vmi_fraction)
      wh.vmi_customers.insert(customers[rng.next_below(customers.size())]);
    inst.warehouses.push_back(std::move(wh));
  }

  // one lane per (port, courier); service level flips per lane, so both DTD
  // and DTP coverage exists with >= 2 lanes
  double w_hi = std::max(spec.weight_range_kg.second, 1.0);
  double f_base = std::max(2, spec.n_orders) * w_hi * 1.25;
  std::vector<ServiceLevel> lane_services;
  for (int pi = 0; pi < spec.n_ports; ++pi) {
    for (int ci = 0; ci < spec.n_couriers; ++ci) {
      Lane lane;
      lane.key.origin_port = ports[pi];
      lane.key.dest_port = dest;
      lane.key.courier = gen_detail::tag("C", ci);
      lane.key.service_level =
          rng.next_unit() < 0.5 ? ServiceLevel::DTD : ServiceLevel::DTP;
      lane.key.transport_day = rng.next_unit() < 0.5 ? "1" : "2";
      lane.key.mode =
          rng.next_unit() < spec.ground_fraction ? Mode::GROUND : Mode::AIR;
      lane_services.push_back(lane.key.service_level);

      double f = f_base * (1.0 + spec.lane_max_spread * rng.next_unit());
      double base_rate = rng.next_in(spec.rate_range.first, spec.rate_range.second);
      int nb = spec.n_bands_per_lane;
      for (int b = 0; b < nb; ++b) {
        RateBand band;
        band.weight_lower_kg = f * b / nb;
        band.weight_upper_kg = f * (b + 1) / nb;
        // couriers discount heavier total loads
        band.rate_per_kg = base_rate * (1.0 - 0.12 * b);
        band.minimum_charge =
            base_rate * spec.weight_range_kg.first * rng.next_in(0.5, 2.0);
        lane.bands.push_back(band);
      }
      inst.lanes.push_back(std::move(lane));
    }
  }

  for (int k = 0; k < spec.n_orders; ++k) {
    Order o;
    o.order_id = gen_detail::tag("ORD", k);
    o.product_id = products[rng.next_below(products.size())];
    o.customer_id = customers[rng.next_below(customers.size())];
    o.destination_port = dest;
    if (rng.next_unit() < spec.crf_fraction) {
      o.service_level = ServiceLevel::CRF;
    } else {
      // only pick service levels some lane actually offers
      ServiceLevel s =
          lane_services[rng.next_below(lane_services.size())];
      o.service_level = s;
    }
    o.weight_kg = rng.next_unit() < 0.03
                      ? 0.0
                      : rng.next_in(spec.weight_range_kg.first,
                                    spec.weight_range_kg.second);
    o.unit_quantity = rng.next_in(1.0, 20.0);
    inst.orders.push_back(std::move(o));
  }

  // Feasibility repair: rewire static coverage for orders with no options,
  // then widen capacities until the greedy pass completes. Deterministic in
  // GenSpec::seed because all choices come from the same stream.
  for (int attempt = 0; attempt < 100; ++attempt) {
    try {
      finalize_instance(inst);
    } catch (const InfeasibleOrder& e) {
      for (auto& o : inst.orders) {
        if (o.order_id != e.order_id) continue;
        Warehouse& wh =
            inst.warehouses[rng.next_below(inst.warehouses.size())];
        wh.supported_products.insert(o.product_id);
        if (!wh.vmi_customers.empty()) wh.vmi_customers.insert(o.customer_id);
        if (o.service_level != ServiceLevel::CRF) {
          for (const auto& lane : inst.lanes)
            if (lane.key.service_level == o.service_level) {
              wh.allowed_ports.insert(lane.key.origin_port);
              break;
            }
        }
        break;
      }
      continue;
    }
    try {
      greedy_solution<double>(inst);
      return inst;
    } catch (const DeadEnd&) {
      for (auto& wh : inst.warehouses) ++wh.daily_capacity_orders;
      continue;
    }
  }
  throw GenRetryExhausted("instance still infeasible after 100 repairs, seed " +
                          std::to_string(spec.seed));
}

// ---------------------------------------------------------------------------
// Independent oracle. This deliberately re-implements band resolution, cost
// evaluation, and constraint checking from the documented data contracts,
// sharing no code with cost_engine/acs_engine; equivalence tests lean on the
// two code paths being written twice.
// ---------------------------------------------------------------------------
namespace oracle {

inline const RateBand& band_at(const Lane& lane, double total) {
  if (lane.bands.empty() || total > lane.max_upper_kg)
    throw WeightAboveLaneMax("oracle: total " + std::to_string(total) +
                             " above lane cap");
  std::size_t pick = 0;
  double best_lower = -1;
  for (std::size_t b = 0; b < lane.bands.size(); ++b) {
    double lo = lane.bands[b].weight_lower_kg;
    if (lo <= total && lo >= best_lower) {
      best_lower = lo;
      pick = b;
    }
  }
  return lane.bands[pick];
}

inline double solution_cost(const ProblemInstance& inst, const Assignment& a) {
  if (!a.complete || a.choices.size() != inst.orders.size())
    throw IncompleteAssignment("oracle: incomplete assignment");
  std::map<int, double> lane_weight;
  for (std::size_t k = 0; k < inst.orders.size(); ++k) {
    const RouteOption& opt = inst.route_options[k][a.choices[k]];
    if (opt.lane_index >= 0 &&
        inst.orders[k].service_level != ServiceLevel::CRF)
      lane_weight[opt.lane_index] += inst.orders[k].weight_kg;
  }
  double total = 0;
  for (std::size_t k = 0; k < inst.orders.size(); ++k) {
    const Order& o = inst.orders[k];
    const RouteOption& opt = inst.route_options[k][a.choices[k]];
    total += o.unit_quantity *
             inst.warehouses[opt.warehouse_index].storage_rate_per_unit;
    if (o.service_level == ServiceLevel::CRF) continue;
    const Lane& lane = inst.lanes[opt.lane_index];
    double lw = lane_weight[opt.lane_index];
    const RateBand& band = band_at(lane, lw);
    if (lane.key.mode == Mode::GROUND) {
      if (lw > 0) total += band.rate_per_kg * o.weight_kg / lw;
    } else {
      double rw = band.rate_per_kg * o.weight_kg;
      total += rw < band.minimum_charge ? band.minimum_charge : rw;
    }
  }
  return total;
}

inline std::vector<std::string> check(const ProblemInstance& inst,
                                      const Assignment& a) {
  std::vector<std::string> out;
  std::map<int, long long> wh_count;
  std::map<int, double> lane_weight;
  for (std::size_t k = 0; k < inst.orders.size(); ++k) {
    std::int32_t c = k < a.choices.size() ? a.choices[k] : -1;
    if (c < 0) continue;
    const RouteOption& opt = inst.route_options[k][c];
    ++wh_count[opt.warehouse_index];
    if (opt.lane_index >= 0)
      lane_weight[opt.lane_index] += inst.orders[k].weight_kg;
  }
  for (const auto& [wi, cnt] : wh_count)
    if (cnt > inst.warehouses[wi].daily_capacity_orders)
      out.push_back("capacity " + inst.warehouses[wi].warehouse_id);
  for (const auto& [li, w] : lane_weight)
    if (w > inst.lanes[li].max_upper_kg)
      out.push_back("weight " + inst.lanes[li].key.str());
  for (std::size_t k = 0; k < inst.orders.size(); ++k) {
    std::int32_t c = k < a.choices.size() ? a.choices[k] : -1;
    if (c < 0) continue;
    const Order& o = inst.orders[k];
    const RouteOption& opt = inst.route_options[k][c];
    const Warehouse& wh = inst.warehouses[opt.warehouse_index];
    if (wh.supported_products.find(o.product_id) ==
        wh.supported_products.end())
      out.push_back("product " + o.order_id);
    if (!wh.vmi_customers.empty() &&
        wh.vmi_customers.find(o.customer_id) == wh.vmi_customers.end())
      out.push_back("vmi " + o.order_id);
    if (opt.lane_index >= 0 &&
        wh.allowed_ports.find(inst.lanes[opt.lane_index].key.origin_port) ==
            wh.allowed_ports.end())
      out.push_back("port " + o.order_id);
  }
  return out;
}

}  // namespace oracle

// Exhaustive enumeration in lexicographic assignment order with incremental
// capacity/weight pruning; full independent feasibility check and cost at
// each leaf. Ties keep the first (lexicographically smallest) assignment.
inline std::pair<Assignment, double> brute_force_optimum(
    const ProblemInstance& inst) {
  double space = 1;
  for (const auto& opts : inst.route_options) {
    space *= static_cast<double>(opts.size());
    if (space > 1e7)
      throw SearchSpaceTooLarge("assignment space exceeds 1e7");
  }
  std::size_t l = inst.orders.size();
  Assignment cur;
  cur.choices.assign(l, -1);
  cur.complete = true;
  Assignment best;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<long long> wh_count(inst.warehouses.size(), 0);
  std::vector<double> lane_weight(inst.lanes.size(), 0.0);

  std::function<void(std::size_t)> dfs = [&](std::size_t k) {
    if (k == l) {
      if (!oracle::check(inst, cur).empty()) return;
      double c = oracle::solution_cost(inst, cur);
      if (c < best_cost) {
        best_cost = c;
        best = cur;
      }
      return;
    }
    const Order& o = inst.orders[k];
    for (std::size_t r = 0; r < inst.route_options[k].size(); ++r) {
      const RouteOption& opt = inst.route_options[k][r];
      if (wh_count[opt.warehouse_index] >=
          inst.warehouses[opt.warehouse_index].daily_capacity_orders)
        continue;
      bool uses_lane = opt.lane_index >= 0;
      if (uses_lane && lane_weight[opt.lane_index] + o.weight_kg >
                           inst.lanes[opt.lane_index].max_upper_kg)
        continue;
      cur.choices[k] = static_cast<std::int32_t>(r);
      ++wh_count[opt.warehouse_index];
      if (uses_lane) lane_weight[opt.lane_index] += o.weight_kg;
      dfs(k + 1);
      if (uses_lane) lane_weight[opt.lane_index] -= o.weight_kg;
      --wh_count[opt.warehouse_index];
      cur.choices[k] = -1;
    }
  };
  dfs(0);
  if (!std::isfinite(best_cost))
    throw DeadEnd(l ? inst.orders[0].order_id : "", 0);
  best.complete = true;
  return {best, best_cost};
}

// Chi-square goodness of fit of a selector's empirical frequencies against
// weights / sum(weights). selector(values, n, u) -> index.
template <typename Selector>
double roulette_gof_test(Selector&& selector,
                         const std::vector<double>& weights,
                         std::size_t n_draws,
                         std::uint64_t seed = 0x9d1ce5eedull) {
  double sum = 0;
  for (double w : weights) sum += w;
  if (!(sum > 0)) throw AllMasked("roulette_gof_test: zero weight vector");
  if (n_draws < 1) throw ConfigError("roulette_gof_test: need draws");

  std::vector<std::size_t> counts(weights.size(), 0);
  Sm64 rng(mix64(seed, 0x676f66ull));
  for (std::size_t d = 0; d < n_draws; ++d) {
    std::size_t idx = selector(weights.data(), weights.size(), rng.next_unit());
    if (idx >= weights.size()) return 0.0;  // selector is broken
    ++counts[idx];
  }

  double chi2 = 0;
  int df = -1;  // k - 1
  for (std::size_t i = 0; i < weights.size(); ++i) {
    double expected = static_cast<double>(n_draws) * (weights[i] / sum);
    if (expected <= 0) {
      if (counts[i] > 0) return 0.0;  // mass where there should be none
      continue;
    }
    double diff = static_cast<double>(counts[i]) - expected;
    chi2 += diff * diff / expected;
    ++df;
  }
  if (df <= 0) return 1.0;  // single category
  return boost::math::gamma_q(df / 2.0, chi2 / 2.0);
}

// Two-sample chi-square homogeneity test over per-index counts; used to
// compare two selection mechanisms draw-for-draw-free.
inline double two_sample_chi_square(const std::vector<std::size_t>& a,
                                    const std::vector<std::size_t>& b) {
  double na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) na += static_cast<double>(a[i]);
  for (std::size_t i = 0; i < b.size(); ++i) nb += static_cast<double>(b[i]);
  if (!(na > 0) || !(nb > 0)) throw ConfigError("two_sample: empty counts");
  double k1 = std::sqrt(nb / na), k2 = std::sqrt(na / nb);
  double chi2 = 0;
  int df = -1;
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    double ai = i < a.size() ? static_cast<double>(a[i]) : 0.0;
    double bi = i < b.size() ? static_cast<double>(b[i]) : 0.0;
    if (ai + bi <= 0) continue;
    double diff = k1 * ai - k2 * bi;
    chi2 += diff * diff / (ai + bi);
    ++df;
  }
  if (df <= 0) return 1.0;
  return boost::math::gamma_q(df / 2.0, chi2 / 2.0);
}

}  // namespace acoroute
