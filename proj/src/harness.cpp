// Copyright 2026 The ICSCM Authors
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

#include "icscm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "icscm/errors.hpp"
#include "icscm/io.hpp"

namespace icscm::harness {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::size_t intersection_size(const std::vector<FeatureIndex>& a,
                              const std::vector<FeatureIndex>& b) {
  std::size_t n = 0;
  for (FeatureIndex f : a) {
    n += std::find(b.begin(), b.end(), f) != b.end();
  }
  return n;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  return out;
}

SimConfig run_config(const ExperimentGrid& grid, std::size_t xb_size,
                     std::size_t run_index) {
  SimConfig config = grid.base;
  config.n_distractors = xb_size;
  config.seed = run_seed(grid.master_seed, xb_size, run_index);
  return config;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kScm: return "scm";
    case Method::kIcscm: return "icscm";
    case Method::kIcp: return "icp";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view text) {
  for (Method m : {Method::kScm, Method::kIcscm, Method::kIcp}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

void ExperimentGrid::validate() const {
  if (methods.empty()) throw ConfigError("no methods requested");
  if (xb_sizes.empty()) throw ConfigError("no distractor sizes requested");
  if (n_runs < 1) throw ConfigError("n_runs must be >= 1");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  scm.validate();
  icscm.validate();
  icp.validate();
  SimConfig probe = base;
  probe.n_distractors = 0;
  probe.validate();
  if (base.n_env < 2) {
    throw ConfigError("experiments need at least two environments");
  }
  if (std::find(methods.begin(), methods.end(), Method::kIcp) !=
      methods.end()) {
    for (std::size_t xb : xb_sizes) {
      check_icp_feasible(xb + 3, icp.max_subset_size);
    }
  }
}

const CellSummary& IdentificationTable::cell(Method method,
                                             std::size_t xb_size) const {
  for (const CellSummary& c : cells) {
    if (c.method == method && c.xb_size == xb_size) return c;
  }
  throw ConfigError("no such cell in the identification table");
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t xb_size,
                       std::size_t run_index) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(xb_size));
  return splitmix64(h ^ static_cast<std::uint64_t>(run_index));
}

double precision(const std::vector<FeatureIndex>& selected,
                 const std::vector<FeatureIndex>& parents) {
  if (selected.empty()) return 1.0;
  return static_cast<double>(intersection_size(selected, parents)) /
         static_cast<double>(selected.size());
}

double recall(const std::vector<FeatureIndex>& selected,
              const std::vector<FeatureIndex>& parents) {
  if (parents.empty()) return 1.0;
  return static_cast<double>(intersection_size(selected, parents)) /
         static_cast<double>(parents.size());
}

std::vector<FeatureIndex> fit_method(Method method, const Dataset& data,
                                     const ExperimentGrid& grid) {
  switch (method) {
    case Method::kScm: return scm_fit(data, grid.scm).selected_features;
    case Method::kIcscm: return icscm_fit(data, grid.icscm).selected_features;
    case Method::kIcp: return icp_fit(data, grid.icp).parents;
  }
  return {};
}

IdentificationTable run_identification(const ExperimentGrid& grid) {
  grid.validate();
  const std::size_t n_methods = grid.methods.size();
  const std::size_t n_tasks = grid.xb_sizes.size() * grid.n_runs;

  IdentificationTable table;
  table.runs.resize(n_tasks * n_methods);

  auto run_task = [&](std::size_t task) {
    const std::size_t xb = grid.xb_sizes[task / grid.n_runs];
    const std::size_t run = task % grid.n_runs;
    const SimConfig config = run_config(grid, xb, run);
    const Simulation sim = simulate(config);
    for (std::size_t k = 0; k < n_methods; ++k) {
      IdentificationResult& r = table.runs[task * n_methods + k];
      r.method = grid.methods[k];
      r.xb_size = xb;
      r.run_index = run;
      r.seed = config.seed;
      const auto start = Clock::now();
      r.selected_features = fit_method(r.method, sim.data, grid);
      const double elapsed = seconds_since(start);
      r.wall_time_s = grid.record_wall_time ? elapsed : 0.0;
      const auto& parents = sim.truth.parent_indices;
      r.exact_match = r.selected_features == parents;
      r.precision = precision(r.selected_features, parents);
      r.recall = recall(r.selected_features, parents);
    }
  };

  const std::size_t workers = std::min(grid.jobs, n_tasks);
  if (workers <= 1) {
    for (std::size_t t = 0; t < n_tasks; ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < n_tasks; t = next++) {
          try {
            run_task(t);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (Method method : grid.methods) {
    for (std::size_t xb : grid.xb_sizes) {
      CellSummary cell{method, xb, 0, 0.0, 0.0, 0.0, 0.0};
      for (const auto& r : table.runs) {
        if (r.method != method || r.xb_size != xb) continue;
        ++cell.n_runs;
        cell.identification_rate += r.exact_match ? 1.0 : 0.0;
        cell.mean_precision += r.precision;
        cell.mean_recall += r.recall;
        cell.mean_wall_time_s += r.wall_time_s;
      }
      const double n = static_cast<double>(cell.n_runs);
      cell.identification_rate /= n;
      cell.mean_precision /= n;
      cell.mean_recall /= n;
      cell.mean_wall_time_s /= n;
      table.cells.push_back(cell);
    }
  }
  return table;
}

std::vector<RuntimePoint> run_runtime_benchmark(const ExperimentGrid& grid,
                                                std::size_t repeats) {
  grid.validate();
  if (repeats < 1) throw ConfigError("repeats must be >= 1");
  std::vector<RuntimePoint> points;
  for (Method method : grid.methods) {
    for (std::size_t xb : grid.xb_sizes) {
      std::vector<double> per_run;
      for (std::size_t run = 0; run < grid.n_runs; ++run) {
        const Simulation sim = simulate(run_config(grid, xb, run));
        double best = 0.0;
        for (std::size_t rep = 0; rep < repeats; ++rep) {
          const auto start = Clock::now();
          const auto selected = fit_method(method, sim.data, grid);
          const double t = seconds_since(start);
          if (rep == 0 || t < best) best = t;
          (void)selected;
        }
        per_run.push_back(best);
      }
      points.push_back(RuntimePoint{method, xb, xb + 3, median(per_run),
                                    grid.n_runs * repeats});
    }
  }
  return points;
}

void write_identification_csv(std::ostream& out,
                              const IdentificationTable& table) {
  out << "method,xb_size,seed,exact_match,precision,recall,wall_time_s\n";
  for (const auto& r : table.runs) {
    out << to_string(r.method) << ',' << r.xb_size << ',' << r.seed << ','
        << (r.exact_match ? 1 : 0) << ',' << io::format_fixed(r.precision, 6)
        << ',' << io::format_fixed(r.recall, 6) << ','
        << io::format_fixed(r.wall_time_s, 6) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const IdentificationTable& table) {
  out << "method,xb_size,n_runs,identification_rate,mean_precision,"
         "mean_recall,mean_wall_time_s\n";
  for (const auto& c : table.cells) {
    out << to_string(c.method) << ',' << c.xb_size << ',' << c.n_runs << ','
        << io::format_fixed(c.identification_rate, 4) << ','
        << io::format_fixed(c.mean_precision, 4) << ','
        << io::format_fixed(c.mean_recall, 4) << ','
        << io::format_fixed(c.mean_wall_time_s, 6) << '\n';
  }
}

void write_runtime_csv(std::ostream& out,
                       const std::vector<RuntimePoint>& points) {
  out << "method,xb_size,n_features,median_wall_time_s,timed_fits\n";
  for (const auto& p : points) {
    out << to_string(p.method) << ',' << p.xb_size << ',' << p.n_features
        << ',' << io::format_fixed(p.median_wall_time_s, 6) << ',' << p.samples
        << '\n';
  }
}

void write_runtime_plot_csv(std::ostream& out,
                            const IdentificationTable& table) {
  out << "method,xb_size,wall_time_s\n";
  for (const auto& c : table.cells) {
    out << to_string(c.method) << ',' << c.xb_size << ','
        << io::format_fixed(c.mean_wall_time_s, 6) << '\n';
  }
}

void write_precision_recall_plot_csv(std::ostream& out,
                                     const IdentificationTable& table) {
  out << "method,xb_size,metric,value\n";
  for (const auto& c : table.cells) {
    out << to_string(c.method) << ',' << c.xb_size << ",precision,"
        << io::format_fixed(c.mean_precision, 4) << '\n';
    out << to_string(c.method) << ',' << c.xb_size << ",recall,"
        << io::format_fixed(c.mean_recall, 4) << '\n';
  }
}

nlohmann::json manifest(const ExperimentGrid& grid) {
  nlohmann::json methods = nlohmann::json::array();
  for (Method m : grid.methods) methods.push_back(std::string(to_string(m)));
  nlohmann::json icp = {{"alpha", grid.icp.alpha}};
  if (grid.icp.max_subset_size) {
    icp["max_subset_size"] = *grid.icp.max_subset_size;
  }
  return {
      {"methods", methods},
      {"xb_sizes", grid.xb_sizes},
      {"n_runs", grid.n_runs},
      {"master_seed", grid.master_seed},
      {"seed_derivation",
       "splitmix64 chain over (master_seed, xb_size, run_index); all methods "
       "share the dataset of a run"},
      {"simulator", io::to_json(grid.base)},
      {"scm", {{"p", grid.scm.p}, {"max_rules", grid.scm.max_rules}}},
      {"icscm",
       {{"p", grid.icscm.p},
        {"max_rules", grid.icscm.max_rules},
        {"alpha", grid.icscm.alpha},
        {"min_leaf", grid.icscm.min_leaf},
        {"leaf_test", std::string(stats::to_string(grid.icscm.test_method))},
        {"prune", grid.icscm.prune}}},
      {"icp", icp},
      {"record_wall_time", grid.record_wall_time},
  };
}

void write_experiment_outputs(const std::filesystem::path& dir,
                              const ExperimentGrid& grid,
                              const IdentificationTable& table,
                              bool plot_data) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "identification.csv");
    write_identification_csv(out, table);
  }
  {
    auto out = open_out(dir / "summary.csv");
    write_summary_csv(out, table);
  }
  io::write_json(dir / "manifest.json", manifest(grid));
  if (plot_data) {
    auto rt = open_out(dir / "fig_runtime.csv");
    write_runtime_plot_csv(rt, table);
    auto pr = open_out(dir / "fig_precision_recall.csv");
    write_precision_recall_plot_csv(pr, table);
  }
}

}  // namespace icscm::harness
