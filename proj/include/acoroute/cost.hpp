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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acoroute/errors.hpp"
#include "acoroute/instance.hpp"

namespace acoroute {

struct Assignment {
  std::vector<std::int32_t> choices;  // route-option index per order; -1 unset
  bool complete = false;

  bool operator==(const Assignment&) const = default;
};

// Feasibility bookkeeping is always double, independent of the cost
// precision: construction and check_constraints must agree bit-for-bit on
// which line weights are legal, and they do because both accumulate the same
// doubles in the same fixed order (order index ascending).
struct LineTotals {
  std::vector<double> line_weight;          // by lane index
  std::vector<long long> warehouse_orders;  // by warehouse index
};

inline LineTotals accumulate_totals(const ProblemInstance& inst,
                                    const Assignment& a) {
  LineTotals t;
  t.line_weight.assign(inst.lanes.size(), 0.0);
  t.warehouse_orders.assign(inst.warehouses.size(), 0);
  for (std::size_t k = 0; k < inst.orders.size(); ++k) {
    std::int32_t c = k < a.choices.size() ? a.choices[k] : -1;
    if (c < 0) continue;
    const RouteOption& opt = inst.route_options[k][c];
    ++t.warehouse_orders[opt.warehouse_index];
    if (!opt.is_crf()) t.line_weight[opt.lane_index] += inst.orders[k].weight_kg;
  }
  return t;
}

struct CostPolicy {
  // GROUND full-truck rate R: true = rate of the band resolved at the line's
  // total weight (same semantics as the AIR branch), false = flat rate of the
  // lane's top band.
  bool ground_rate_at_total_weight = true;
};

template <typename Real>
struct CostBreakdown {
  Real total = 0;
  Real warehouse_total = 0;
  Real transport_total = 0;
  std::optional<std::vector<std::pair<Real, Real>>> per_order;  // (wc, tc)
};

template <typename Real>
inline Real warehouse_cost(const Order& order, const Warehouse& wh) {
  return static_cast<Real>(order.unit_quantity) *
         static_cast<Real>(wh.storage_rate_per_unit);
}

// Band lookup at a line's total weight. Effective intervals are the
// normalized contiguous ones: [lower_i, lower_{i+1}) with the first interval
// extended down to 0 and the last closed at F (a total exactly equal to F is
// legal load, so it must resolve). Boundary ties go to the higher band.
inline const RateBand& resolve_band(const Lane& lane, double total_weight_kg) {
  if (lane.bands.empty())
    throw WeightAboveLaneMax("lane " + lane.key.str() + " has no bands");
  if (total_weight_kg > lane.max_upper_kg)
    throw WeightAboveLaneMax("lane " + lane.key.str() + ": total " +
                             std::to_string(total_weight_kg) + " > F = " +
                             std::to_string(lane.max_upper_kg));
  std::size_t chosen = 0;
  for (std::size_t b = 1; b < lane.bands.size(); ++b) {
    if (total_weight_kg >= lane.bands[b].weight_lower_kg) chosen = b;
  }
  return lane.bands[chosen];
}

template <typename Real>
inline Real transport_cost(const ProblemInstance& inst, const Order& order,
                           const RouteOption& opt, const LineTotals& totals,
                           const CostPolicy& policy = {}) {
  if (order.service_level == ServiceLevel::CRF) return Real(0);
  const Lane& lane = inst.lanes[opt.lane_index];
  double line_total = totals.line_weight[opt.lane_index];
  const RateBand& band = resolve_band(lane, line_total);
  if (lane.key.mode == Mode::GROUND) {
    double rate = policy.ground_rate_at_total_weight
                      ? band.rate_per_kg
                      : lane.bands.back().rate_per_kg;
    if (line_total <= 0) return Real(0);  // whole line weightless
    // full-truck rate shared by weight proportion
    return static_cast<Real>(rate) * static_cast<Real>(order.weight_kg) /
           static_cast<Real>(line_total);
  }
  Real rw =
      static_cast<Real>(band.rate_per_kg) * static_cast<Real>(order.weight_kg);
  Real m = static_cast<Real>(band.minimum_charge);
  return rw < m ? m : rw;
}

// Two passes: totals first because every per-order transport cost depends on
// the final line totals, not on any placement prefix.
template <typename Real>
inline CostBreakdown<Real> solution_cost(const ProblemInstance& inst,
                                         const Assignment& a,
                                         bool with_per_order = false,
                                         const CostPolicy& policy = {}) {
  if (!a.complete)
    throw IncompleteAssignment("assignment not marked complete");
  if (a.choices.size() != inst.orders.size())
    throw IncompleteAssignment(
        "assignment length " + std::to_string(a.choices.size()) +
        " != order count " + std::to_string(inst.orders.size()));
  for (std::size_t k = 0; k < a.choices.size(); ++k)
    if (a.choices[k] < 0)
      throw IncompleteAssignment("order " + inst.orders[k].order_id +
                                 " unassigned");

  LineTotals totals = accumulate_totals(inst, a);
  CostBreakdown<Real> out;
  if (with_per_order) out.per_order.emplace();
  for (std::size_t k = 0; k < inst.orders.size(); ++k) {
    const Order& order = inst.orders[k];
    const RouteOption& opt = inst.route_options[k][a.choices[k]];
    Real wc = warehouse_cost<Real>(order, inst.warehouses[opt.warehouse_index]);
    Real tc = transport_cost<Real>(inst, order, opt, totals, policy);
    out.warehouse_total += wc;
    out.transport_total += tc;
    if (with_per_order) out.per_order->emplace_back(wc, tc);
  }
  out.total = out.warehouse_total + out.transport_total;
  return out;
}

struct Violation {
  enum class Kind {
    CapacityExceeded,
    WeightCapExceeded,
    ProductUnsupported,
    VmiViolated,
    PortUnlinked,
  };
  Kind kind;
  std::string subject;
  double magnitude = 0;
};

inline const char* to_string(Violation::Kind k) {
  using K = Violation::Kind;
  switch (k) {
    case K::CapacityExceeded: return "CapacityExceeded";
    case K::WeightCapExceeded: return "WeightCapExceeded";
    case K::ProductUnsupported: return "ProductUnsupported";
    case K::VmiViolated: return "VmiViolated";
    default: return "PortUnlinked";
  }
}

inline std::vector<Violation> check_constraints(const ProblemInstance& inst,
                                                const Assignment& a) {
  std::vector<Violation> out;
  LineTotals totals = accumulate_totals(inst, a);

  for (std::size_t i = 0; i < inst.warehouses.size(); ++i) {
    long long cap = inst.warehouses[i].daily_capacity_orders;
    if (totals.warehouse_orders[i] > cap)
      out.push_back({Violation::Kind::CapacityExceeded,
                     inst.warehouses[i].warehouse_id,
                     static_cast<double>(totals.warehouse_orders[i] - cap)});
  }
  for (std::size_t li = 0; li < inst.lanes.size(); ++li) {
    double f = inst.lanes[li].max_upper_kg;
    if (totals.line_weight[li] > f)
      out.push_back({Violation::Kind::WeightCapExceeded,
                     inst.lanes[li].key.str(), totals.line_weight[li] - f});
  }
  for (std::size_t k = 0; k < inst.orders.size(); ++k) {
    std::int32_t c = k < a.choices.size() ? a.choices[k] : -1;
    if (c < 0) continue;
    const Order& order = inst.orders[k];
    const RouteOption& opt = inst.route_options[k][c];
    const Warehouse& wh = inst.warehouses[opt.warehouse_index];
    if (wh.supported_products.count(order.product_id) == 0)
      out.push_back(
          {Violation::Kind::ProductUnsupported, order.order_id, 0});
    if (!wh.serves_customer(order.customer_id))
      out.push_back({Violation::Kind::VmiViolated, order.order_id, 0});
    if (!opt.is_crf() &&
        wh.allowed_ports.count(inst.lanes[opt.lane_index].key.origin_port) == 0)
      out.push_back({Violation::Kind::PortUnlinked, order.order_id, 0});
  }
  return out;
}

inline double proximity(double best_known, double achieved) {
  if (best_known <= 0)
    throw NonPositiveCost("best-known cost must be positive, got " +
                          std::to_string(best_known));
  if (achieved <= 0)
    throw NonPositiveCost("achieved cost must be positive, got " +
                          std::to_string(achieved));
  return 100.0 * best_known / achieved;
}

}  // namespace acoroute
