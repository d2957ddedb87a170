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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acoroute/acoroute.hpp"

namespace {

using namespace acoroute;

std::optional<std::filesystem::path> opt_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::filesystem::path(s);
}

ProblemInstance load_from(const std::string& data_dir,
                          const std::string& mapping) {
  return load_instance(data_dir, opt_path(mapping));
}

void write_solution_csv(const std::string& path, const ProblemInstance& inst,
                        const Assignment& a, const CostBreakdown<double>& cb) {
  std::vector<std::vector<std::string>> rows;
  char buf[64];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (std::size_t k = 0; k < inst.orders.size(); ++k) {
    const Order& o = inst.orders[k];
    const RouteOption& opt = inst.route_options[k][a.choices[k]];
    const Warehouse& wh = inst.warehouses[opt.warehouse_index];
    std::string port = "-", courier = "-", mode = "CRF";
    if (!opt.is_crf()) {
      const Lane& lane = inst.lanes[opt.lane_index];
      port = lane.key.origin_port;
      courier = lane.key.courier;
      mode = to_string(lane.key.mode);
    }
    const auto& po = (*cb.per_order)[k];
    rows.push_back({o.order_id, wh.warehouse_id, port, courier,
                    to_string(o.service_level), mode, fmt(po.first),
                    fmt(po.second)});
  }
  csv::write_table(path,
                   {"order_id", "warehouse", "origin_port", "courier",
                    "service", "mode", "warehouse_cost", "transport_cost"},
                   rows);
}

int cmd_solve(const std::string& data_dir, const std::string& mapping,
              const std::string& arch, int instances, int ants, long long budget,
              std::uint64_t seed, const std::string& precision, int stride,
              int workers, bool no_equivalence, double time_limit,
              long long iterations, const std::string& out) {
  RunConfig rc;
  rc.architecture = parse_architecture(arch);
  rc.parallel_instances = instances;
  rc.ants_per_instance = ants;
  rc.solution_budget = budget;
  rc.master_seed = seed;
  rc.precision = parse_precision(precision);
  rc.checkpoint_stride = stride;
  rc.workers = workers;
  rc.equivalence_mode = !no_equivalence;
  if (time_limit > 0) rc.time_limit_s = time_limit;
  if (iterations > 0) rc.iteration_override = iterations;

  ProblemInstance inst = load_from(data_dir, mapping);
  RunResult res = run(rc, inst);

  CostBreakdown<double> cb =
      solution_cost<double>(inst, res.best_assignment, true);
  std::printf("architecture      %s\n", to_string(rc.architecture));
  std::printf("instances x ants  %d x %d\n", instances, ants);
  std::printf("iterations        %lld\n",
              static_cast<long long>(res.iterations_executed));
  std::printf("solutions         %lld\n",
              static_cast<long long>(res.solutions_constructed));
  std::printf("best total        %.2f\n", res.best_total);
  std::printf("  warehouse       %.2f\n", cb.warehouse_total);
  std::printf("  transport       %.2f\n", cb.transport_total);
  std::printf("wall s            %.3f (%.6f s/iteration, %d workers)\n",
              res.total_wall_s, res.wall_time_per_iteration_s,
              res.workers_used);
  if (!out.empty()) {
    write_solution_csv(out, inst, res.best_assignment, cb);
    std::printf("solution written  %s\n", out.c_str());
  }
  return 0;
}

int cmd_bench_convergence(const std::string& config_path, int jobs) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  if (cfg.data_dir.empty())
    throw ConfigError("experiment config needs data_dir for bench runs");
  std::optional<std::string> mapping;
  if (!cfg.mapping_file.empty()) mapping = cfg.mapping_file;
  ProblemInstance inst = load_instance(cfg.data_dir, opt_path(cfg.mapping_file));

  std::vector<RunTrace> traces = run_matrix_traces(cfg, inst, jobs);
  std::vector<ConvergenceMatrix> matrices;
  for (Architecture a : cfg.architectures)
    matrices.push_back(convergence_matrix(traces, a, cfg.best_known_cost));
  CheckpointTable table = checkpoint_iterations(traces, cfg);
  emit_report(cfg, matrices, table, {}, cfg.output_dir);
  std::printf("traces: %zu runs -> %s\n", traces.size(),
              cfg.output_dir.c_str());
  return 0;
}

int cmd_bench_timing(const std::string& config_path,
                     const std::vector<std::string>& archs,
                     const std::vector<int>& counts) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  if (cfg.data_dir.empty())
    throw ConfigError("experiment config needs data_dir for bench runs");
  ProblemInstance inst = load_instance(cfg.data_dir, opt_path(cfg.mapping_file));

  std::vector<Architecture> as = cfg.architectures;
  if (!archs.empty()) {
    as.clear();
    for (const auto& a : archs) as.push_back(parse_architecture(a));
  }
  std::vector<int> ns = counts.empty() ? cfg.instance_counts : counts;

  std::vector<TimingRecord> records;
  for (Architecture a : as)
    for (int n : ns) {
      TimingRecord rec = timing_run(cfg, a, n, inst);
      std::printf("%-4s %6d instances  %.6f s/iteration  (%lld iterations)\n",
                  to_string(a), n, rec.seconds_per_iteration,
                  static_cast<long long>(rec.iterations));
      records.push_back(rec);
    }
  emit_report(cfg, {}, CheckpointTable{}, records, cfg.output_dir);
  return 0;
}

int cmd_report(const std::string& config_path, const std::string& trace_dir,
               const std::string& out_dir) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  std::string traces_at =
      trace_dir.empty()
          ? (std::filesystem::path(cfg.output_dir) / "traces").string()
          : trace_dir;
  std::string out = out_dir.empty() ? cfg.output_dir : out_dir;

  std::vector<RunTrace> traces = load_traces(traces_at);
  std::vector<ConvergenceMatrix> matrices;
  for (Architecture a : cfg.architectures)
    matrices.push_back(convergence_matrix(traces, a, cfg.best_known_cost));
  CheckpointTable table = checkpoint_iterations(traces, cfg);
  emit_report(cfg, matrices, table, {}, out);
  std::printf("report rebuilt from %zu traces -> %s\n", traces.size(),
              out.c_str());
  return 0;
}

int cmd_validate(const std::string& data_dir, const std::string& mapping) {
  ProblemInstance inst = load_from(data_dir, mapping);
  std::vector<InstanceIssue> issues = validate_instance(inst);
  std::printf("orders %zu, warehouses %zu, lanes %zu\n", inst.orders.size(),
              inst.warehouses.size(), inst.lanes.size());
  for (const auto& issue : issues)
    std::printf("%-20s %-24s %s\n", to_string(issue.kind),
                issue.subject.c_str(), issue.detail.c_str());
  if (!issues.empty()) {
    std::printf("%zu issue(s) found\n", issues.size());
    return 3;
  }
  std::printf("clean\n");
  return 0;
}

int cmd_oracle(const std::string& data_dir, const std::string& mapping,
               std::uint64_t gen_seed, int orders, int warehouses, int ports,
               int couriers, int bands, const std::string& write_dir,
               bool check_acs) {
  ProblemInstance inst;
  if (!data_dir.empty()) {
    inst = load_from(data_dir, mapping);
  } else {
    GenSpec spec;
    spec.seed = gen_seed;
    spec.n_orders = orders;
    spec.n_warehouses = warehouses;
    spec.n_ports = ports;
    spec.n_couriers = couriers;
    spec.n_bands_per_lane = bands;
    inst = generate_instance(spec);
  }
  if (!write_dir.empty()) {
    write_instance_csv(inst, write_dir);
    std::printf("instance written  %s\n", write_dir.c_str());
  }

  auto [assignment, cost] = brute_force_optimum(inst);
  std::printf("optimum           %.6f\n", cost);
  CostBreakdown<double> cb = solution_cost<double>(inst, assignment, false);
  std::printf("engine re-eval    %.6f\n", cb.total);
  for (std::size_t k = 0; k < inst.orders.size(); ++k) {
    const RouteOption& opt = inst.route_options[k][assignment.choices[k]];
    std::printf("  %-8s -> %s via %s\n", inst.orders[k].order_id.c_str(),
                inst.warehouses[opt.warehouse_index].warehouse_id.c_str(),
                opt.is_crf() ? "CRF" : inst.lanes[opt.lane_index].key.str().c_str());
  }

  if (check_acs) {
    RunConfig rc;
    rc.architecture = Architecture::PA;
    rc.parallel_instances = 4;
    rc.ants_per_instance = 1;
    rc.iteration_override = 200;
    rc.solution_budget = 4LL * 200;
    rc.master_seed = 7;
    RunResult res = run(rc, inst);
    double rel = std::abs(res.best_total - cost) / cost;
    std::printf("acs best          %.6f (rel gap %.3g)\n", res.best_total, rel);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ACS supply-chain routing toolkit"};
  app.require_subcommand(1);

  // solve
  std::string s_data, s_map, s_arch = "pa", s_prec = "f64", s_out;
  int s_inst = 1, s_ants = 1, s_stride = 5, s_workers = 0;
  long long s_budget = 768000, s_iters = 0;
  std::uint64_t s_seed = 1;
  double s_tl = 0;
  bool s_noeq = false;
  auto* solve = app.add_subcommand("solve", "run one configuration");
  solve->add_option("--data-dir", s_data)->required();
  solve->add_option("--mapping", s_map);
  solve->add_option("--arch", s_arch, "iac|pa|pawv");
  solve->add_option("--instances", s_inst);
  solve->add_option("--ants", s_ants);
  solve->add_option("--budget", s_budget);
  solve->add_option("--seed", s_seed);
  solve->add_option("--precision", s_prec, "f32|f64");
  solve->add_option("--stride", s_stride);
  solve->add_option("--workers", s_workers);
  solve->add_option("--time-limit", s_tl, "seconds");
  solve->add_option("--iterations", s_iters, "cap; overrides budget-derived");
  solve->add_flag("--no-equivalence", s_noeq);
  solve->add_option("--out", s_out, "write per-order solution CSV");

  // bench convergence / timing
  auto* bench = app.add_subcommand("bench", "experiment protocols");
  bench->require_subcommand(1);
  std::string bc_config;
  int bc_jobs = 1;
  auto* bconv = bench->add_subcommand("convergence", "full matrix");
  bconv->add_option("--config", bc_config)->required();
  bconv->add_option("--jobs", bc_jobs, "parallel cells (timing-unsafe)");
  std::string bt_config;
  std::vector<std::string> bt_archs;
  std::vector<int> bt_counts;
  auto* btime = bench->add_subcommand("timing", "seconds per iteration");
  btime->add_option("--config", bt_config)->required();
  btime->add_option("--arch", bt_archs);
  btime->add_option("--instances", bt_counts);

  // report
  std::string r_config, r_traces, r_out;
  auto* report = app.add_subcommand("report", "rebuild tables from traces");
  report->add_option("--config", r_config)->required();
  report->add_option("--traces", r_traces);
  report->add_option("--out", r_out);

  // validate
  std::string v_data, v_map;
  auto* validate = app.add_subcommand("validate", "dataset lint");
  validate->add_option("--data-dir", v_data)->required();
  validate->add_option("--mapping", v_map);

  // oracle
  std::string o_data, o_map, o_write;
  std::uint64_t o_seed = 1;
  int o_orders = 3, o_wh = 2, o_ports = 2, o_couriers = 2, o_bands = 2;
  bool o_acs = false;
  auto* oracle = app.add_subcommand("oracle", "brute-force tiny instances");
  oracle->add_option("--data-dir", o_data);
  oracle->add_option("--mapping", o_map);
  oracle->add_option("--gen-seed", o_seed);
  oracle->add_option("--orders", o_orders);
  oracle->add_option("--warehouses", o_wh);
  oracle->add_option("--ports", o_ports);
  oracle->add_option("--couriers", o_couriers);
  oracle->add_option("--bands", o_bands);
  oracle->add_option("--write-dir", o_write, "dump generated instance CSVs");
  oracle->add_flag("--check-acs", o_acs, "also run PA and report gap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*solve)
      return cmd_solve(s_data, s_map, s_arch, s_inst, s_ants, s_budget, s_seed,
                       s_prec, s_stride, s_workers, s_noeq, s_tl, s_iters,
                       s_out);
    if (*bconv) return cmd_bench_convergence(bc_config, bc_jobs);
    if (*btime) return cmd_bench_timing(bt_config, bt_archs, bt_counts);
    if (*report) return cmd_report(r_config, r_traces, r_out);
    if (*validate) return cmd_validate(v_data, v_map);
    if (*oracle)
      return cmd_oracle(o_data, o_map, o_seed, o_orders, o_wh, o_ports,
                        o_couriers, o_bands, o_write, o_acs);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 3;
  } catch (const RunError& e) {
    std::fprintf(stderr, "run error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 0;
}
