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
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "acoroute/csv.hpp"
#include "acoroute/errors.hpp"

namespace acoroute {

enum class ServiceLevel : std::uint8_t { DTD, DTP, CRF };
enum class Mode : std::uint8_t { AIR, GROUND };

inline const char* to_string(ServiceLevel s) {
  switch (s) {
    case ServiceLevel::DTD: return "DTD";
    case ServiceLevel::DTP: return "DTP";
    default: return "CRF";
  }
}

inline const char* to_string(Mode m) {
  return m == Mode::AIR ? "AIR" : "GROUND";
}

inline ServiceLevel parse_service_level(const std::string& raw,
                                        const std::string& where) {
  std::string s = csv::lower(csv::trim(raw));
  if (s == "dtd") return ServiceLevel::DTD;
  if (s == "dtp") return ServiceLevel::DTP;
  if (s == "crf") return ServiceLevel::CRF;
  throw SchemaError(where + ": unknown service level '" + raw + "'");
}

inline Mode parse_mode(const std::string& raw, const std::string& where) {
  std::string s = csv::lower(csv::trim(raw));
  if (s == "air") return Mode::AIR;
  if (s == "ground") return Mode::GROUND;
  throw SchemaError(where + ": unknown mode '" + raw + "'");
}

struct Order {
  std::string order_id;
  std::string product_id;
  std::string customer_id;
  std::string destination_port;   // j
  ServiceLevel service_level = ServiceLevel::DTD;  // s_k
  double weight_kg = 0;           // w_k
  double unit_quantity = 0;       // q_k

  bool operator==(const Order&) const = default;
};

struct Warehouse {
  std::string warehouse_id;       // i
  long long daily_capacity_orders = 0;   // C_i
  double storage_rate_per_unit = 0;      // P_i
  std::set<std::string> supported_products;
  std::set<std::string> allowed_ports;   // p
  std::set<std::string> vmi_customers;   // empty = unrestricted

  bool serves_customer(const std::string& customer) const {
    return vmi_customers.empty() || vmi_customers.count(customer) > 0;
  }

  bool operator==(const Warehouse&) const = default;
};

// Six-component line identity (p, j, c, s, t, m). Default <=> gives the
// lexicographic order used everywhere options must be deterministic.
struct LaneKey {
  std::string origin_port;
  std::string dest_port;
  std::string courier;
  ServiceLevel service_level = ServiceLevel::DTD;
  std::string transport_day;   // opaque; datasets encode it differently
  Mode mode = Mode::AIR;

  auto operator<=>(const LaneKey&) const = default;

  std::string str() const {
    return origin_port + "/" + dest_port + "/" + courier + "/" +
           to_string(service_level) + "/" + transport_day + "/" +
           to_string(mode);
  }
};

struct RateBand {
  double weight_lower_kg = 0;
  double weight_upper_kg = 0;
  double rate_per_kg = 0;     // R
  double minimum_charge = 0;  // M

  bool operator==(const RateBand&) const = default;
};

struct Lane {
  LaneKey key;
  std::vector<RateBand> bands;  // sorted by weight_lower_kg
  double max_upper_kg = 0;      // F

  bool operator==(const Lane&) const = default;
};

struct RouteOption {
  std::int32_t order_index = 0;      // k
  std::int32_t warehouse_index = 0;  // i
  std::int32_t lane_index = -1;      // -1 = synthetic CRF option (no lane)
  std::int32_t route_index = 0;      // dense r within the order

  bool is_crf() const { return lane_index < 0; }

  bool operator==(const RouteOption&) const = default;
};

struct ProblemInstance {
  std::vector<Order> orders;          // dataset order, length l
  std::vector<Warehouse> warehouses;  // first-appearance order of WhCapacities
  std::vector<Lane> lanes;            // sorted by LaneKey
  std::vector<std::vector<RouteOption>> route_options;  // per order
  std::optional<double> best_known_cost;

  std::size_t n_orders() const { return orders.size(); }

  std::size_t total_route_options() const {
    std::size_t n = 0;
    for (const auto& v : route_options) n += v.size();
    return n;
  }

  int lane_index_of(const LaneKey& key) const {
    auto it = std::lower_bound(
        lanes.begin(), lanes.end(), key,
        [](const Lane& l, const LaneKey& k) { return l.key < k; });
    if (it == lanes.end() || !(it->key == key)) return -1;
    return static_cast<int>(it - lanes.begin());
  }
};

struct InstanceIssue {
  enum class Kind {
    OverlappingBands,
    EmptyBand,          // band with lower >= upper
    NegativeWeight,
    NegativeQuantity,
    NegativeRate,
    NonPositiveCapacity,
    NoPortsLinked,
    NoRouteOptions,
    OrderOverLaneMax,   // order weight alone exceeds F on every option
  };
  Kind kind;
  std::string subject;
  std::string detail;
};

inline const char* to_string(InstanceIssue::Kind k) {
  using K = InstanceIssue::Kind;
  switch (k) {
    case K::OverlappingBands: return "OverlappingBands";
    case K::EmptyBand: return "EmptyBand";
    case K::NegativeWeight: return "NegativeWeight";
    case K::NegativeQuantity: return "NegativeQuantity";
    case K::NegativeRate: return "NegativeRate";
    case K::NonPositiveCapacity: return "NonPositiveCapacity";
    case K::NoPortsLinked: return "NoPortsLinked";
    case K::NoRouteOptions: return "NoRouteOptions";
    default: return "OrderOverLaneMax";
  }
}

// ---------------------------------------------------------------------------
// Route-option enumeration.
//
// Static feasibility only: product support, VMI, plant-port link, destination
// match, service-level match. Weight and capacity are dynamic and belong to
// construction/checking. CRF orders get one synthetic option per feasible
// warehouse; their lane choice is irrelevant because their transport cost is
// identically zero, while the warehouse choice still carries storage cost and
// capacity load.
// ---------------------------------------------------------------------------
inline std::vector<RouteOption> enumerate_route_options(
    const ProblemInstance& instance, const Order& order,
    std::int32_t order_index) {
  std::vector<RouteOption> out;
  for (std::size_t wi = 0; wi < instance.warehouses.size(); ++wi) {
    const Warehouse& wh = instance.warehouses[wi];
    if (wh.supported_products.count(order.product_id) == 0) continue;
    if (!wh.serves_customer(order.customer_id)) continue;
    if (order.service_level == ServiceLevel::CRF) {
      RouteOption opt;
      opt.order_index = order_index;
      opt.warehouse_index = static_cast<std::int32_t>(wi);
      opt.lane_index = -1;
      opt.route_index = static_cast<std::int32_t>(out.size());
      out.push_back(opt);
      continue;
    }
    // lanes are key-sorted, so iteration order is the deterministic
    // (warehouse index, lane key) order the contract asks for
    for (std::size_t li = 0; li < instance.lanes.size(); ++li) {
      const Lane& lane = instance.lanes[li];
      if (lane.key.dest_port != order.destination_port) continue;
      if (lane.key.service_level != order.service_level) continue;
      if (wh.allowed_ports.count(lane.key.origin_port) == 0) continue;
      RouteOption opt;
      opt.order_index = order_index;
      opt.warehouse_index = static_cast<std::int32_t>(wi);
      opt.lane_index = static_cast<std::int32_t>(li);
      opt.route_index = static_cast<std::int32_t>(out.size());
      out.push_back(opt);
    }
  }
  return out;
}

inline std::vector<RouteOption> enumerate_route_options(
    const ProblemInstance& instance, const Order& order) {
  auto it = std::find(instance.orders.begin(), instance.orders.end(), order);
  std::int32_t k = it == instance.orders.end()
                       ? 0
                       : static_cast<std::int32_t>(it - instance.orders.begin());
  return enumerate_route_options(instance, order, k);
}

// Sorts lanes, enumerates options for every order, and enforces referential
// integrity. Both the CSV loader and the synthetic generator finish through
// here so the two construction paths cannot drift apart.
inline void finalize_instance(ProblemInstance& instance) {
  std::sort(instance.lanes.begin(), instance.lanes.end(),
            [](const Lane& a, const Lane& b) { return a.key < b.key; });
  for (auto& lane : instance.lanes) {
    std::sort(lane.bands.begin(), lane.bands.end(),
              [](const RateBand& a, const RateBand& b) {
                return a.weight_lower_kg < b.weight_lower_kg;
              });
    lane.max_upper_kg = 0;
    for (const auto& b : lane.bands)
      lane.max_upper_kg = std::max(lane.max_upper_kg, b.weight_upper_kg);
  }
  instance.route_options.clear();
  instance.route_options.reserve(instance.orders.size());
  for (std::size_t k = 0; k < instance.orders.size(); ++k) {
    auto opts = enumerate_route_options(instance, instance.orders[k],
                                        static_cast<std::int32_t>(k));
    if (opts.empty()) throw InfeasibleOrder(instance.orders[k].order_id);
    instance.route_options.push_back(std::move(opts));
  }
}

// ---------------------------------------------------------------------------
// Loader.
// ---------------------------------------------------------------------------
namespace detail {

inline std::string find_table_file(const std::filesystem::path& dir,
                                   const std::string& stem) {
  std::string want = csv::lower(stem);
  if (!std::filesystem::is_directory(dir))
    throw IoError("not a directory: " + dir.string());
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto p = entry.path();
    if (csv::lower(p.extension().string()) != ".csv") continue;
    if (csv::lower(p.stem().string()) == want) return p.string();
  }
  throw MissingTable(stem);
}

// Column mapping: keys "<table>.<canonical>" (lowercase table name) map a
// canonical column to the actual header used in the file.
struct ColumnMap {
  std::map<std::string, std::string> kv;

  int require(const csv::Table& t, const std::string& table_low,
              const std::string& canonical) const {
    auto it = kv.find(table_low + "." + canonical);
    const std::string& header = it == kv.end() ? canonical : it->second;
    int idx = t.find(header);
    if (idx < 0)
      throw SchemaError(t.name + ": required column '" + header +
                        "' (for " + canonical + ") not found");
    return idx;
  }
};

}  // namespace detail

inline ProblemInstance load_instance(
    const std::filesystem::path& data_dir,
    const std::optional<std::filesystem::path>& mapping_file = std::nullopt) {
  detail::ColumnMap cm;
  if (mapping_file) {
    cm.kv = csv::read_kv_file(mapping_file->string());
  } else {
    auto def = data_dir / "mapping.map";
    if (std::filesystem::exists(def)) cm.kv = csv::read_kv_file(def.string());
  }

  auto table = [&](const char* stem) {
    return csv::read_table(detail::find_table_file(data_dir, stem), stem);
  };
  csv::Table t_orders = table("OrderList");
  csv::Table t_rates = table("FreightRates");
  csv::Table t_ports = table("PlantPorts");
  csv::Table t_products = table("ProductsPerPlant");
  csv::Table t_vmi = table("VmiCustomers");
  csv::Table t_cap = table("WhCapacities");
  csv::Table t_cost = table("WhCosts");

  ProblemInstance inst;

  // warehouses: capacity table defines the index order; cost joins on id
  {
    int c_id = cm.require(t_cap, "whcapacities", "warehouse_id");
    int c_cap = cm.require(t_cap, "whcapacities", "daily_capacity");
    std::map<std::string, std::size_t> index;
    for (std::size_t r = 0; r < t_cap.rows.size(); ++r) {
      std::string id = csv::trim(t_cap.cell(r, c_id));
      if (index.count(id))
        throw SchemaError("WhCapacities: duplicate warehouse '" + id + "'");
      Warehouse wh;
      wh.warehouse_id = id;
      wh.daily_capacity_orders = csv::parse_int(
          t_cap.cell(r, c_cap), "WhCapacities row " + std::to_string(r + 2));
      index[id] = inst.warehouses.size();
      inst.warehouses.push_back(std::move(wh));
    }

    int o_id = cm.require(t_cost, "whcosts", "warehouse_id");
    int o_cost = cm.require(t_cost, "whcosts", "cost_per_unit");
    std::set<std::string> costed;
    for (std::size_t r = 0; r < t_cost.rows.size(); ++r) {
      std::string id = csv::trim(t_cost.cell(r, o_id));
      auto it = index.find(id);
      if (it == index.end())
        throw DanglingReference("WhCosts: unknown warehouse '" + id + "'");
      inst.warehouses[it->second].storage_rate_per_unit = csv::parse_double(
          t_cost.cell(r, o_cost), "WhCosts row " + std::to_string(r + 2));
      costed.insert(id);
    }
    for (const auto& wh : inst.warehouses)
      if (costed.count(wh.warehouse_id) == 0)
        throw DanglingReference("WhCosts: no cost row for warehouse '" +
                                wh.warehouse_id + "'");

    auto wh_ref = [&](const csv::Table& t, std::size_t row,
                      int col) -> Warehouse& {
      std::string id = csv::trim(t.cell(row, col));
      auto it = index.find(id);
      if (it == index.end())
        throw DanglingReference(t.name + ": unknown warehouse '" + id + "'");
      return inst.warehouses[it->second];
    };

    int p_id = cm.require(t_ports, "plantports", "warehouse_id");
    int p_port = cm.require(t_ports, "plantports", "port_id");
    for (std::size_t r = 0; r < t_ports.rows.size(); ++r)
      wh_ref(t_ports, r, p_id)
          .allowed_ports.insert(csv::trim(t_ports.cell(r, p_port)));

    int pr_id = cm.require(t_products, "productsperplant", "warehouse_id");
    int pr_prod = cm.require(t_products, "productsperplant", "product_id");
    for (std::size_t r = 0; r < t_products.rows.size(); ++r)
      wh_ref(t_products, r, pr_id)
          .supported_products.insert(csv::trim(t_products.cell(r, pr_prod)));

    int v_id = cm.require(t_vmi, "vmicustomers", "warehouse_id");
    int v_cust = cm.require(t_vmi, "vmicustomers", "customer_id");
    for (std::size_t r = 0; r < t_vmi.rows.size(); ++r)
      wh_ref(t_vmi, r, v_id)
          .vmi_customers.insert(csv::trim(t_vmi.cell(r, v_cust)));
  }

  // freight lanes, grouped by the six-component key
  {
    int c_orig = cm.require(t_rates, "freightrates", "origin_port");
    int c_dest = cm.require(t_rates, "freightrates", "dest_port");
    int c_cour = cm.require(t_rates, "freightrates", "courier");
    int c_svc = cm.require(t_rates, "freightrates", "service_level");
    int c_day = cm.require(t_rates, "freightrates", "transport_day");
    int c_mode = cm.require(t_rates, "freightrates", "mode");
    int c_lo = cm.require(t_rates, "freightrates", "min_weight_kg");
    int c_hi = cm.require(t_rates, "freightrates", "max_weight_kg");
    int c_rate = cm.require(t_rates, "freightrates", "rate_per_kg");
    int c_min = cm.require(t_rates, "freightrates", "minimum_charge");

    std::map<LaneKey, std::vector<RateBand>> groups;
    for (std::size_t r = 0; r < t_rates.rows.size(); ++r) {
      std::string where = "FreightRates row " + std::to_string(r + 2);
      LaneKey key;
      key.origin_port = csv::trim(t_rates.cell(r, c_orig));
      key.dest_port = csv::trim(t_rates.cell(r, c_dest));
      key.courier = csv::trim(t_rates.cell(r, c_cour));
      key.service_level = parse_service_level(t_rates.cell(r, c_svc), where);
      key.transport_day = csv::trim(t_rates.cell(r, c_day));
      key.mode = parse_mode(t_rates.cell(r, c_mode), where);
      RateBand band;
      band.weight_lower_kg = csv::parse_double(t_rates.cell(r, c_lo), where);
      band.weight_upper_kg = csv::parse_double(t_rates.cell(r, c_hi), where);
      band.rate_per_kg = csv::parse_double(t_rates.cell(r, c_rate), where);
      band.minimum_charge = csv::parse_double(t_rates.cell(r, c_min), where);
      // the public workbook repeats some rows verbatim; a literal repeat is
      // one band, while bands that differ in any field are kept for the lint
      auto& bands = groups[key];
      bool repeat = false;
      for (const auto& b : bands)
        repeat = repeat || (b.weight_lower_kg == band.weight_lower_kg &&
                            b.weight_upper_kg == band.weight_upper_kg &&
                            b.rate_per_kg == band.rate_per_kg &&
                            b.minimum_charge == band.minimum_charge);
      if (!repeat) bands.push_back(band);
    }
    for (auto& [key, bands] : groups) {
      Lane lane;
      lane.key = key;
      lane.bands = std::move(bands);
      inst.lanes.push_back(std::move(lane));
    }
  }

  // orders
  {
    int c_id = cm.require(t_orders, "orderlist", "order_id");
    int c_prod = cm.require(t_orders, "orderlist", "product_id");
    int c_cust = cm.require(t_orders, "orderlist", "customer_id");
    int c_dest = cm.require(t_orders, "orderlist", "destination_port");
    int c_svc = cm.require(t_orders, "orderlist", "service_level");
    int c_w = cm.require(t_orders, "orderlist", "weight_kg");
    int c_q = cm.require(t_orders, "orderlist", "unit_quantity");
    for (std::size_t r = 0; r < t_orders.rows.size(); ++r) {
      std::string where = "OrderList row " + std::to_string(r + 2);
      Order o;
      o.order_id = csv::trim(t_orders.cell(r, c_id));
      o.product_id = csv::trim(t_orders.cell(r, c_prod));
      o.customer_id = csv::trim(t_orders.cell(r, c_cust));
      o.destination_port = csv::trim(t_orders.cell(r, c_dest));
      o.service_level = parse_service_level(t_orders.cell(r, c_svc), where);
      o.weight_kg = csv::parse_double(t_orders.cell(r, c_w), where);
      o.unit_quantity = csv::parse_double(t_orders.cell(r, c_q), where);
      inst.orders.push_back(std::move(o));
    }
  }

  finalize_instance(inst);
  return inst;
}

// ---------------------------------------------------------------------------
// Lint. Issues are data, not errors; the loader stays permissive where the
// validator can report instead.
// ---------------------------------------------------------------------------
inline std::vector<InstanceIssue> validate_instance(
    const ProblemInstance& inst) {
  using K = InstanceIssue::Kind;
  std::vector<InstanceIssue> issues;
  auto add = [&](K kind, std::string subject, std::string detail) {
    issues.push_back({kind, std::move(subject), std::move(detail)});
  };

  for (const auto& lane : inst.lanes) {
    for (std::size_t b = 0; b < lane.bands.size(); ++b) {
      const auto& band = lane.bands[b];
      if (band.weight_lower_kg >= band.weight_upper_kg)
        add(K::EmptyBand, lane.key.str(),
            "band [" + std::to_string(band.weight_lower_kg) + ", " +
                std::to_string(band.weight_upper_kg) + ")");
      if (band.rate_per_kg < 0)
        add(K::NegativeRate, lane.key.str(),
            "rate " + std::to_string(band.rate_per_kg));
      if (b > 0 && band.weight_lower_kg < lane.bands[b - 1].weight_upper_kg &&
          band.weight_lower_kg > lane.bands[b - 1].weight_lower_kg)
        add(K::OverlappingBands, lane.key.str(),
            "bands " + std::to_string(b - 1) + " and " + std::to_string(b) +
                " overlap");
      if (b > 0 && band.weight_lower_kg == lane.bands[b - 1].weight_lower_kg)
        add(K::OverlappingBands, lane.key.str(),
            "bands " + std::to_string(b - 1) + " and " + std::to_string(b) +
                " share a lower bound");
    }
  }

  for (const auto& wh : inst.warehouses) {
    if (wh.daily_capacity_orders <= 0)
      add(K::NonPositiveCapacity, wh.warehouse_id,
          "capacity " + std::to_string(wh.daily_capacity_orders));
    if (wh.allowed_ports.empty())
      add(K::NoPortsLinked, wh.warehouse_id, "no PlantPorts rows");
  }

  for (std::size_t k = 0; k < inst.orders.size(); ++k) {
    const Order& o = inst.orders[k];
    if (o.weight_kg < 0)
      add(K::NegativeWeight, o.order_id, std::to_string(o.weight_kg));
    if (o.unit_quantity < 0)
      add(K::NegativeQuantity, o.order_id, std::to_string(o.unit_quantity));
    if (k < inst.route_options.size()) {
      const auto& opts = inst.route_options[k];
      if (opts.empty()) {
        add(K::NoRouteOptions, o.order_id, "");
      } else if (o.service_level != ServiceLevel::CRF) {
        bool fits_somewhere = false;
        for (const auto& opt : opts)
          if (o.weight_kg <= inst.lanes[opt.lane_index].max_upper_kg) {
            fits_somewhere = true;
            break;
          }
        if (!fits_somewhere)
          add(K::OrderOverLaneMax, o.order_id,
              "weight " + std::to_string(o.weight_kg) +
                  " exceeds every option's lane max");
      }
    }
  }
  return issues;
}

// ---------------------------------------------------------------------------
// Serializer: writes the seven canonical CSVs so generated instances can be
// reloaded through the normal path.
// ---------------------------------------------------------------------------
inline void write_instance_csv(const ProblemInstance& inst,
                               const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string());

  auto fmt = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };

  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& o : inst.orders)
      rows.push_back({o.order_id, o.product_id, o.customer_id,
                      o.destination_port, to_string(o.service_level),
                      fmt(o.weight_kg), fmt(o.unit_quantity)});
    csv::write_table((dir / "OrderList.csv").string(),
                     {"order_id", "product_id", "customer_id",
                      "destination_port", "service_level", "weight_kg",
                      "unit_quantity"},
                     rows);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& lane : inst.lanes)
      for (const auto& b : lane.bands)
        rows.push_back({lane.key.origin_port, lane.key.dest_port,
                        lane.key.courier, to_string(lane.key.service_level),
                        lane.key.transport_day, to_string(lane.key.mode),
                        fmt(b.weight_lower_kg), fmt(b.weight_upper_kg),
                        fmt(b.rate_per_kg), fmt(b.minimum_charge)});
    csv::write_table((dir / "FreightRates.csv").string(),
                     {"origin_port", "dest_port", "courier", "service_level",
                      "transport_day", "mode", "min_weight_kg",
                      "max_weight_kg", "rate_per_kg", "minimum_charge"},
                     rows);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& wh : inst.warehouses)
      for (const auto& p : wh.allowed_ports)
        rows.push_back({wh.warehouse_id, p});
    csv::write_table((dir / "PlantPorts.csv").string(),
                     {"warehouse_id", "port_id"}, rows);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& wh : inst.warehouses)
      for (const auto& p : wh.supported_products)
        rows.push_back({wh.warehouse_id, p});
    csv::write_table((dir / "ProductsPerPlant.csv").string(),
                     {"warehouse_id", "product_id"}, rows);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& wh : inst.warehouses)
      for (const auto& c : wh.vmi_customers)
        rows.push_back({wh.warehouse_id, c});
    csv::write_table((dir / "VmiCustomers.csv").string(),
                     {"warehouse_id", "customer_id"}, rows);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& wh : inst.warehouses)
      rows.push_back(
          {wh.warehouse_id, std::to_string(wh.daily_capacity_orders)});
    csv::write_table((dir / "WhCapacities.csv").string(),
                     {"warehouse_id", "daily_capacity"}, rows);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& wh : inst.warehouses)
      rows.push_back({wh.warehouse_id, fmt(wh.storage_rate_per_unit)});
    csv::write_table((dir / "WhCosts.csv").string(),
                     {"warehouse_id", "cost_per_unit"}, rows);
  }
}

}  // namespace acoroute
