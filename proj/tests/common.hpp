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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "acoroute/acoroute.hpp"

namespace testutil {

using namespace acoroute;

inline Order make_order(std::string id, std::string product,
                        std::string customer, ServiceLevel s, double w,
                        double q, std::string dest = "J") {
  Order o;
  o.order_id = std::move(id);
  o.product_id = std::move(product);
  o.customer_id = std::move(customer);
  o.destination_port = std::move(dest);
  o.service_level = s;
  o.weight_kg = w;
  o.unit_quantity = q;
  return o;
}

inline Warehouse make_warehouse(std::string id, long long cap, double rate,
                                std::initializer_list<std::string> ports,
                                std::initializer_list<std::string> products,
                                std::initializer_list<std::string> vmi = {}) {
  Warehouse w;
  w.warehouse_id = std::move(id);
  w.daily_capacity_orders = cap;
  w.storage_rate_per_unit = rate;
  for (const auto& p : ports) w.allowed_ports.insert(p);
  for (const auto& p : products) w.supported_products.insert(p);
  for (const auto& c : vmi) w.vmi_customers.insert(c);
  return w;
}

struct BandSpec {
  double lo, hi, rate, min_charge;
};

inline Lane make_lane(std::string origin, std::string courier, ServiceLevel s,
                      Mode m, std::initializer_list<BandSpec> bands,
                      std::string dest = "J", std::string day = "1") {
  Lane lane;
  lane.key.origin_port = std::move(origin);
  lane.key.dest_port = std::move(dest);
  lane.key.courier = std::move(courier);
  lane.key.service_level = s;
  lane.key.transport_day = std::move(day);
  lane.key.mode = m;
  for (const auto& b : bands) {
    RateBand band;
    band.weight_lower_kg = b.lo;
    band.weight_upper_kg = b.hi;
    band.rate_per_kg = b.rate;
    band.minimum_charge = b.min_charge;
    lane.bands.push_back(band);
  }
  return lane;
}

inline ProblemInstance make_instance(std::vector<Order> orders,
                                     std::vector<Warehouse> warehouses,
                                     std::vector<Lane> lanes) {
  ProblemInstance inst;
  inst.orders = std::move(orders);
  inst.warehouses = std::move(warehouses);
  inst.lanes = std::move(lanes);
  finalize_instance(inst);
  return inst;
}

// Two warehouses, an AIR and a GROUND lane, hand-checkable numbers.
//   W1: cap 2, P=1.5, port PA, products {X,Y}
//   W2: cap 2, P=2.0, port PB, products {X}
//   L_air  (PA,J,C1,DTD,AIR):    [0,100)@2.0 M=10, [100,500)@1.2 M=10
//   L_grnd (PB,J,C1,DTD,GROUND): [0,1000)@1000
inline ProblemInstance tiny_instance(std::vector<Order> orders) {
  return make_instance(
      std::move(orders),
      {make_warehouse("W1", 2, 1.5, {"PA"}, {"X", "Y"}),
       make_warehouse("W2", 2, 2.0, {"PB"}, {"X"})},
      {make_lane("PA", "C1", ServiceLevel::DTD, Mode::AIR,
                 {{0, 100, 2.0, 10}, {100, 500, 1.2, 10}}),
       make_lane("PB", "C1", ServiceLevel::DTD, Mode::GROUND,
                 {{0, 1000, 1000, 0}})});
}

inline std::optional<std::string> dataset_dir() {
  const char* p = std::getenv("ACOROUTE_DATASET_DIR");
  if (!p || !*p) return std::nullopt;
  return std::string(p);
}

// Scratch directory under the build tree's test working dir.
inline std::filesystem::path fresh_dir(const std::string& name) {
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / ("acoroute_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

inline bool same_options(const ProblemInstance& a, const ProblemInstance& b) {
  if (a.route_options.size() != b.route_options.size()) return false;
  for (std::size_t k = 0; k < a.route_options.size(); ++k) {
    const auto& ra = a.route_options[k];
    const auto& rb = b.route_options[k];
    if (ra.size() != rb.size()) return false;
    for (std::size_t r = 0; r < ra.size(); ++r) {
      if (ra[r].warehouse_index != rb[r].warehouse_index) return false;
      bool crf_a = ra[r].is_crf(), crf_b = rb[r].is_crf();
      if (crf_a != crf_b) return false;
      if (!crf_a &&
          !(a.lanes[ra[r].lane_index].key == b.lanes[rb[r].lane_index].key))
        return false;
    }
  }
  return true;
}

}  // namespace testutil
