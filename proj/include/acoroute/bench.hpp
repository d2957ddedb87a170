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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "acoroute/cost.hpp"
#include "acoroute/csv.hpp"
#include "acoroute/errors.hpp"
#include "acoroute/instance.hpp"
#include "acoroute/pool.hpp"
#include "acoroute/rng.hpp"
#include "acoroute/runtime.hpp"

namespace acoroute {

struct ExperimentConfig {
  std::string data_dir;
  std::string mapping_file;
  std::vector<Architecture> architectures = {Architecture::IAC,
                                             Architecture::PA,
                                             Architecture::PAwV};
  std::vector<int> instance_counts = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512,
                                      1024};
  int repeats = 10;
  long long solution_budget = 768000;
  std::vector<double> checkpoints = {99.00, 99.25, 99.50, 99.60, 99.75, 99.90};
  double best_known_cost = 2701367.58;
  int timing_iteration_cap = 500;
  double timing_time_limit_s = 600.0;
  std::string output_dir = "out";
  // Unstated-in-print knobs, exposed rather than hard-coded.
  std::uint64_t base_seed = 1;
  int ants_per_instance = 1;
  int checkpoint_stride = 5;
  Precision precision = Precision::Double;
  int workers = 0;
  bool equivalence_mode = true;
  double reach_fraction = 0.8;  // cell reported iff >= this share of repeats

  void validate() const {
    if (repeats < 1) throw ConfigError("repeats must be >= 1");
    if (instance_counts.empty())
      throw ConfigError("instance_counts must be nonempty");
    for (int n : instance_counts)
      if (n < 1) throw ConfigError("instance_counts entries must be >= 1");
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
      if (!(checkpoints[i] > checkpoints[i - 1]))
        throw ConfigError("checkpoints must be strictly increasing");
    if (!(best_known_cost > 0))
      throw ConfigError("best_known_cost must be > 0");
    if (timing_iteration_cap < 1)
      throw ConfigError("timing_iteration_cap must be >= 1");
    if (!(timing_time_limit_s > 0))
      throw ConfigError("timing_time_limit_s must be > 0");
    if (reach_fraction < 0 || reach_fraction > 1)
      throw ConfigError("reach_fraction must be in [0,1]");
    if (ants_per_instance < 1) throw ConfigError("ants must be >= 1");
    if (checkpoint_stride < 1) throw ConfigError("stride must be >= 1");
  }
};

namespace bench_detail {

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ';' || c == ' ') {
      if (!csv::trim(cur).empty()) out.push_back(csv::trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!csv::trim(cur).empty()) out.push_back(csv::trim(cur));
  return out;
}

inline bool parse_bool(const std::string& s) {
  std::string v = csv::lower(csv::trim(s));
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("expected boolean, got '" + s + "'");
}

}  // namespace bench_detail

inline ExperimentConfig load_experiment_config(const std::string& path) {
  ExperimentConfig cfg;
  auto kv = csv::read_kv_file(path);
  for (const auto& [key, value] : kv) {
    if (key == "data_dir") cfg.data_dir = value;
    else if (key == "mapping_file") cfg.mapping_file = value;
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "architectures") {
      cfg.architectures.clear();
      for (const auto& a : bench_detail::split_list(value))
        cfg.architectures.push_back(parse_architecture(a));
    } else if (key == "instance_counts") {
      cfg.instance_counts.clear();
      for (const auto& n : bench_detail::split_list(value))
        cfg.instance_counts.push_back(
            static_cast<int>(csv::parse_int(n, "instance_counts")));
    } else if (key == "checkpoints") {
      cfg.checkpoints.clear();
      for (const auto& c : bench_detail::split_list(value))
        cfg.checkpoints.push_back(csv::parse_double(c, "checkpoints"));
    } else if (key == "repeats") {
      cfg.repeats = static_cast<int>(csv::parse_int(value, key));
    } else if (key == "solution_budget") {
      cfg.solution_budget = csv::parse_int(value, key);
    } else if (key == "best_known_cost") {
      cfg.best_known_cost = csv::parse_double(value, key);
    } else if (key == "timing_iteration_cap") {
      cfg.timing_iteration_cap = static_cast<int>(csv::parse_int(value, key));
    } else if (key == "timing_time_limit_s") {
      cfg.timing_time_limit_s = csv::parse_double(value, key);
    } else if (key == "base_seed") {
      cfg.base_seed = csv::parse_uint64(value, key);
    } else if (key == "ants") {
      cfg.ants_per_instance = static_cast<int>(csv::parse_int(value, key));
    } else if (key == "stride") {
      cfg.checkpoint_stride = static_cast<int>(csv::parse_int(value, key));
    } else if (key == "precision") {
      cfg.precision = parse_precision(value);
    } else if (key == "workers") {
      cfg.workers = static_cast<int>(csv::parse_int(value, key));
    } else if (key == "equivalence") {
      cfg.equivalence_mode = bench_detail::parse_bool(value);
    } else if (key == "reach_fraction") {
      cfg.reach_fraction = csv::parse_double(value, key);
    } else {
      throw ConfigError("unknown experiment config key '" + key + "' in " +
                        path);
    }
  }
  cfg.validate();
  return cfg;
}

// One run's best-so-far series at stride resolution; costs stay raw so
// proximity can be recomputed against any reference afterwards.
struct RunTrace {
  Architecture architecture = Architecture::PA;
  int instance_count = 1;
  int repeat = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<long long, double>> points;  // (iteration, best cost)
  double best_cost = std::numeric_limits<double>::infinity();
  long long iterations = 0;
  long long solutions = 0;
};

struct ConvergenceMatrix {
  Architecture architecture = Architecture::PA;
  std::vector<int> instance_counts;
  std::vector<long long> iterations;  // sorted union across columns
  // (instance_count, iteration) -> mean proximity %, only where every repeat
  // of that column has a point at that iteration
  std::map<std::pair<int, long long>, double> cells;
  int repeats = 0;
  std::vector<std::uint64_t> seeds;
};

struct CheckpointTable {
  std::vector<Architecture> architectures;
  std::vector<double> checkpoints;
  std::vector<int> instance_counts;
  // (architecture, checkpoint, instance_count) -> mean iterations-to-reach
  std::map<std::tuple<int, double, int>, double> cells;

  std::optional<double> lookup(Architecture a, double cp, int n) const {
    auto it = cells.find({static_cast<int>(a), cp, n});
    if (it == cells.end()) return std::nullopt;
    return it->second;
  }
};

struct TimingRecord {
  Architecture architecture = Architecture::PA;
  int instance_count = 1;
  int repeats = 0;
  double seconds_per_iteration = 0;
  double total_seconds = 0;
  long long iterations = 0;
};

inline std::uint64_t cell_seed(std::uint64_t base, Architecture arch, int count,
                               int repeat) {
  return mix64(mix64(mix64(base, 0xa5c0ull + static_cast<int>(arch)),
                     static_cast<std::uint64_t>(count)),
               static_cast<std::uint64_t>(repeat));
}

inline RunConfig make_run_config(const ExperimentConfig& cfg, Architecture arch,
                                 int count, std::uint64_t seed) {
  RunConfig rc;
  rc.architecture = arch;
  rc.parallel_instances = count;
  rc.ants_per_instance = cfg.ants_per_instance;
  rc.solution_budget = cfg.solution_budget;
  rc.master_seed = seed;
  rc.precision = cfg.precision;
  rc.checkpoint_stride = cfg.checkpoint_stride;
  rc.workers = cfg.workers;
  rc.equivalence_mode = cfg.equivalence_mode;
  return rc;
}

namespace bench_detail {

inline std::string trace_filename(Architecture a, int count, int repeat) {
  return std::string("trace_") + to_string(a) + "_" + std::to_string(count) +
         "_" + std::to_string(repeat) + ".csv";
}

inline void write_trace_file(const std::filesystem::path& path,
                             const RunTrace& t) {
  std::vector<std::vector<std::string>> rows;
  char buf[64];
  for (const auto& [it, cost] : t.points) {
    std::snprintf(buf, sizeof buf, "%.17g", cost);
    rows.push_back({std::to_string(it), buf});
  }
  csv::write_table(path.string(), {"iteration", "best_cost"}, rows);
}

inline void write_trace_index(const std::filesystem::path& dir,
                              const std::vector<RunTrace>& traces) {
  std::vector<std::vector<std::string>> rows;
  char buf[64];
  for (const auto& t : traces) {
    std::snprintf(buf, sizeof buf, "%.17g", t.best_cost);
    rows.push_back({to_string(t.architecture),
                    std::to_string(t.instance_count), std::to_string(t.repeat),
                    std::to_string(t.seed),
                    trace_filename(t.architecture, t.instance_count, t.repeat),
                    buf, std::to_string(t.iterations),
                    std::to_string(t.solutions)});
  }
  csv::write_table((dir / "index.csv").string(),
                   {"architecture", "instances", "repeat", "seed", "file",
                    "best_cost", "iterations", "solutions"},
                   rows);
}

inline bool trace_order(const RunTrace& a, const RunTrace& b) {
  auto key = [](const RunTrace& t) {
    return std::tuple(static_cast<int>(t.architecture), t.instance_count,
                      t.repeat);
  };
  return key(a) < key(b);
}

}  // namespace bench_detail

inline std::vector<RunTrace> load_traces(const std::string& trace_dir) {
  namespace fs = std::filesystem;
  csv::Table index =
      csv::read_table((fs::path(trace_dir) / "index.csv").string(), "index");
  int ci_arch = index.require("architecture");
  int ci_n = index.require("instances");
  int ci_rep = index.require("repeat");
  int ci_seed = index.require("seed");
  int ci_file = index.require("file");
  int ci_best = index.require("best_cost");
  int ci_iter = index.require("iterations");
  int ci_sol = index.require("solutions");

  std::vector<RunTrace> out;
  for (std::size_t row = 0; row < index.rows.size(); ++row) {
    RunTrace t;
    t.architecture = parse_architecture(index.cell(row, ci_arch));
    t.instance_count =
        static_cast<int>(csv::parse_int(index.cell(row, ci_n), "instances"));
    t.repeat =
        static_cast<int>(csv::parse_int(index.cell(row, ci_rep), "repeat"));
    t.seed = csv::parse_uint64(index.cell(row, ci_seed), "seed");
    t.best_cost = csv::parse_double(index.cell(row, ci_best), "best_cost");
    t.iterations = csv::parse_int(index.cell(row, ci_iter), "iterations");
    t.solutions = csv::parse_int(index.cell(row, ci_sol), "solutions");

    csv::Table pts = csv::read_table(
        (fs::path(trace_dir) / index.cell(row, ci_file)).string(), "trace");
    int pi = pts.require("iteration");
    int pc = pts.require("best_cost");
    for (std::size_t prow = 0; prow < pts.rows.size(); ++prow)
      t.points.emplace_back(csv::parse_int(pts.cell(prow, pi), "iteration"),
                            csv::parse_double(pts.cell(prow, pc), "best_cost"));
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), bench_detail::trace_order);
  return out;
}

// Executes the full (architecture x instance_count x repeat) grid on one
// problem instance. Each run's trace is flushed to output_dir/traces as soon
// as it finishes, so a failing cell leaves prior cells on disk.
inline std::vector<RunTrace> run_matrix_traces(const ExperimentConfig& cfg,
                                               const ProblemInstance& inst,
                                               int jobs = 1) {
  cfg.validate();
  namespace fs = std::filesystem;
  fs::path tdir = fs::path(cfg.output_dir) / "traces";
  std::error_code ec;
  fs::create_directories(tdir, ec);
  if (ec) throw IoError("cannot create " + tdir.string());

  struct Cell {
    Architecture arch;
    int count;
    int repeat;
  };
  std::vector<Cell> cells;
  for (Architecture a : cfg.architectures)
    for (int n : cfg.instance_counts)
      for (int r = 0; r < cfg.repeats; ++r) cells.push_back({a, n, r});

  std::vector<RunTrace> traces(cells.size());
  std::mutex io_mu;
  auto run_cell = [&](std::size_t i) {
    const Cell& c = cells[i];
    std::uint64_t seed = cell_seed(cfg.base_seed, c.arch, c.count, c.repeat);
    RunConfig rc = make_run_config(cfg, c.arch, c.count, seed);
    RunResult res = run(rc, inst);
    RunTrace t;
    t.architecture = c.arch;
    t.instance_count = c.count;
    t.repeat = c.repeat;
    t.seed = seed;
    t.points = res.convergence;
    t.best_cost = res.best_total;
    t.iterations = res.iterations_executed;
    t.solutions = res.solutions_constructed;
    {
      std::lock_guard<std::mutex> lock(io_mu);
      bench_detail::write_trace_file(
          tdir / bench_detail::trace_filename(c.arch, c.count, c.repeat), t);
    }
    traces[i] = std::move(t);
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    WorkerPool pool(jobs);
    pool.parallel_for(cells.size(),
                      [&](std::size_t i, int /*worker*/) { run_cell(i); });
  }

  std::sort(traces.begin(), traces.end(), bench_detail::trace_order);
  bench_detail::write_trace_index(tdir, traces);
  return traces;
}

inline ConvergenceMatrix convergence_matrix(const std::vector<RunTrace>& traces,
                                            Architecture arch,
                                            double best_known_cost) {
  ConvergenceMatrix m;
  m.architecture = arch;
  std::set<int> counts;
  std::set<long long> iters;
  // (count, iteration) -> (sum proximity, observations)
  std::map<std::pair<int, long long>, std::pair<double, int>> acc;
  std::map<int, int> column_repeats;
  for (const auto& t : traces) {
    if (t.architecture != arch) continue;
    counts.insert(t.instance_count);
    ++column_repeats[t.instance_count];
    m.seeds.push_back(t.seed);
    for (const auto& [it, cost] : t.points) {
      iters.insert(it);
      auto& slot = acc[{t.instance_count, it}];
      slot.first += proximity(best_known_cost, cost);
      ++slot.second;
    }
  }
  m.instance_counts.assign(counts.begin(), counts.end());
  m.iterations.assign(iters.begin(), iters.end());
  for (const auto& [key, slot] : acc) {
    int want = column_repeats[key.first];
    if (slot.second == want && want > 0)
      m.cells[key] = slot.first / slot.second;
  }
  m.repeats =
      column_repeats.empty() ? 0 : column_repeats.begin()->second;
  return m;
}

inline std::vector<ConvergenceMatrix> run_matrix(const ExperimentConfig& cfg,
                                                 const ProblemInstance& inst,
                                                 int jobs = 1) {
  std::vector<RunTrace> traces = run_matrix_traces(cfg, inst, jobs);
  std::vector<ConvergenceMatrix> out;
  for (Architecture a : cfg.architectures)
    out.push_back(convergence_matrix(traces, a, cfg.best_known_cost));
  return out;
}

inline std::vector<ConvergenceMatrix> run_matrix(const ExperimentConfig& cfg,
                                                 int jobs = 1) {
  std::optional<std::string> mapping;
  if (!cfg.mapping_file.empty()) mapping = cfg.mapping_file;
  ProblemInstance inst = load_instance(cfg.data_dir, mapping);
  return run_matrix(cfg, inst, jobs);
}

// First checkpointed iteration with proximity >= threshold, per run;
// averaged over reaching runs. A cell appears only when at least
// ceil(reach_fraction * repeats) of its runs reached the threshold.
inline CheckpointTable checkpoint_iterations(
    const std::vector<RunTrace>& traces, const ExperimentConfig& cfg) {
  CheckpointTable table;
  table.architectures = cfg.architectures;
  table.checkpoints = cfg.checkpoints;
  std::set<int> counts;
  // (arch, checkpoint, count) -> (sum of first-iterations, reached, total)
  std::map<std::tuple<int, double, int>, std::tuple<double, int, int>> acc;
  for (const auto& t : traces) {
    counts.insert(t.instance_count);
    for (double cp : cfg.checkpoints) {
      auto& slot = acc[{static_cast<int>(t.architecture), cp,
                        t.instance_count}];
      ++std::get<2>(slot);
      for (const auto& [it, cost] : t.points) {
        if (proximity(cfg.best_known_cost, cost) >= cp) {
          std::get<0>(slot) += static_cast<double>(it);
          ++std::get<1>(slot);
          break;
        }
      }
    }
  }
  table.instance_counts.assign(counts.begin(), counts.end());
  for (const auto& [key, slot] : acc) {
    auto [sum, reached, total] = slot;
    int need = static_cast<int>(std::ceil(cfg.reach_fraction * total));
    if (need < 1) need = 1;
    if (reached >= need) table.cells[key] = sum / reached;
  }
  return table;
}

inline TimingRecord timing_run(const ExperimentConfig& cfg, Architecture arch,
                               int instance_count,
                               const ProblemInstance& inst) {
  cfg.validate();
  TimingRecord rec;
  rec.architecture = arch;
  rec.instance_count = instance_count;
  rec.repeats = 3;
  double sum_per_iter = 0, sum_total = 0;
  for (int rep = 0; rep < rec.repeats; ++rep) {
    std::uint64_t seed =
        cell_seed(mix64(cfg.base_seed, 0x7431ull), arch, instance_count, rep);
    RunConfig rc = make_run_config(cfg, arch, instance_count, seed);
    rc.iteration_override = cfg.timing_iteration_cap;
    rc.time_limit_s = cfg.timing_time_limit_s;
    RunResult res = run(rc, inst);
    sum_per_iter += res.wall_time_per_iteration_s;
    sum_total += res.total_wall_s;
    rec.iterations = res.iterations_executed;
  }
  rec.seconds_per_iteration = sum_per_iter / rec.repeats;
  rec.total_seconds = sum_total / rec.repeats;
  return rec;
}

namespace bench_detail {

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// FNV-1a over the canonical config text; good enough to spot config drift
// between a report and the traces it claims to describe.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string config_canonical(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "ants=" << cfg.ants_per_instance << "\n";
  os << "architectures=";
  for (std::size_t i = 0; i < cfg.architectures.size(); ++i)
    os << (i ? "," : "") << to_string(cfg.architectures[i]);
  os << "\nbase_seed=" << cfg.base_seed << "\n";
  os << "best_known_cost=" << fmt("%.17g", cfg.best_known_cost) << "\n";
  os << "checkpoints=";
  for (std::size_t i = 0; i < cfg.checkpoints.size(); ++i)
    os << (i ? "," : "") << fmt("%.6g", cfg.checkpoints[i]);
  os << "\nequivalence=" << (cfg.equivalence_mode ? 1 : 0) << "\n";
  os << "instance_counts=";
  for (std::size_t i = 0; i < cfg.instance_counts.size(); ++i)
    os << (i ? "," : "") << cfg.instance_counts[i];
  os << "\nprecision=" << to_string(cfg.precision) << "\n";
  os << "reach_fraction=" << fmt("%.6g", cfg.reach_fraction) << "\n";
  os << "repeats=" << cfg.repeats << "\n";
  os << "solution_budget=" << cfg.solution_budget << "\n";
  os << "stride=" << cfg.checkpoint_stride << "\n";
  os << "timing_iteration_cap=" << cfg.timing_iteration_cap << "\n";
  os << "timing_time_limit_s=" << fmt("%.6g", cfg.timing_time_limit_s) << "\n";
  return os.str();
}

}  // namespace bench_detail

// Writes convergence_matrix.csv, checkpoint_table.csv, timing.csv and
// run_meta.txt. Everything except the host_* lines of run_meta.txt is a pure
// function of the inputs, so reruns produce byte-identical files.
inline void emit_report(const ExperimentConfig& cfg,
                        const std::vector<ConvergenceMatrix>& matrices,
                        const CheckpointTable& checkpoints,
                        const std::vector<TimingRecord>& timing,
                        const std::string& output_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) throw IoError("cannot create " + output_dir);

  std::set<int> count_set;
  for (const auto& m : matrices)
    count_set.insert(m.instance_counts.begin(), m.instance_counts.end());
  count_set.insert(checkpoints.instance_counts.begin(),
                   checkpoints.instance_counts.end());
  if (count_set.empty())
    count_set.insert(cfg.instance_counts.begin(), cfg.instance_counts.end());
  std::vector<int> counts(count_set.begin(), count_set.end());

  {
    std::vector<std::string> headers = {"architecture", "iterations"};
    for (int n : counts) headers.push_back(std::to_string(n));
    std::vector<std::vector<std::string>> rows;
    for (const auto& m : matrices) {
      for (long long it : m.iterations) {
        std::vector<std::string> row = {to_string(m.architecture),
                                        std::to_string(it)};
        for (int n : counts) {
          auto c = m.cells.find({n, it});
          row.push_back(c == m.cells.end()
                            ? ""
                            : bench_detail::fmt("%.3f", c->second));
        }
        rows.push_back(std::move(row));
      }
    }
    csv::write_table((fs::path(output_dir) / "convergence_matrix.csv").string(),
                     headers, rows);
  }

  {
    std::vector<std::string> headers = {"architecture", "checkpoint"};
    for (int n : counts) headers.push_back(std::to_string(n));
    std::vector<std::vector<std::string>> rows;
    for (Architecture a : checkpoints.architectures) {
      for (double cp : checkpoints.checkpoints) {
        std::vector<std::string> row = {to_string(a),
                                        bench_detail::fmt("%.2f", cp)};
        for (int n : counts) {
          auto v = checkpoints.lookup(a, cp, n);
          row.push_back(v ? bench_detail::fmt("%.1f", *v) : "-");
        }
        rows.push_back(std::move(row));
      }
    }
    csv::write_table((fs::path(output_dir) / "checkpoint_table.csv").string(),
                     headers, rows);
  }

  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& t : timing)
      rows.push_back({to_string(t.architecture),
                      std::to_string(t.instance_count),
                      bench_detail::fmt("%.6f", t.seconds_per_iteration),
                      bench_detail::fmt("%.6f", t.total_seconds),
                      std::to_string(t.iterations)});
    csv::write_table((fs::path(output_dir) / "timing.csv").string(),
                     {"architecture", "instances", "seconds_per_iteration",
                      "total_seconds", "iterations"},
                     rows);
  }

  {
    std::string canon = bench_detail::config_canonical(cfg);
    std::ofstream meta(fs::path(output_dir) / "run_meta.txt",
                       std::ios::binary);
    if (!meta) throw IoError("cannot write run_meta.txt");
    meta << "config_hash=" << bench_detail::fnv1a(canon) << "\n" << canon;
    meta << "host_cores=" << std::thread::hardware_concurrency() << "\n";
#if defined(__AVX2__)
    meta << "host_avx2=1\n";
#else
    meta << "host_avx2=0\n";
#endif
  }
}

}  // namespace acoroute
