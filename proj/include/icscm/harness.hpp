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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "icscm/icp.hpp"
#include "icscm/icscm.hpp"
#include "icscm/scm.hpp"
#include "icscm/simulator.hpp"

namespace icscm::harness {

enum class Method { kScm, kIcscm, kIcp };

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view text);

struct ExperimentGrid {
  std::vector<Method> methods = {Method::kScm, Method::kIcscm, Method::kIcp};
  std::vector<std::size_t> xb_sizes = {1, 2, 3, 4, 5, 6, 7};
  std::size_t n_runs = 20;
  std::uint64_t master_seed = 1;
  SimConfig base;  // n_distractors and seed are overwritten per run
  ScmConfig scm;
  IcscmConfig icscm;
  IcpConfig icp;
  std::size_t jobs = 1;
  // When false, wall_time_s is written as 0 so repeated runs are
  // byte-identical.
  bool record_wall_time = true;

  // Throws ConfigError for an empty grid and InfeasibleError when ICP would
  // have to enumerate too many subsets.
  void validate() const;
};

struct IdentificationResult {
  Method method = Method::kScm;
  std::size_t xb_size = 0;
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  std::vector<FeatureIndex> selected_features;
  bool exact_match = false;
  double precision = 1.0;
  double recall = 0.0;
  double wall_time_s = 0.0;
};

struct CellSummary {
  Method method = Method::kScm;
  std::size_t xb_size = 0;
  std::size_t n_runs = 0;
  double identification_rate = 0.0;
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double mean_wall_time_s = 0.0;
};

struct IdentificationTable {
  std::vector<IdentificationResult> runs;  // grid order: xb, run, method
  std::vector<CellSummary> cells;          // grid order: method, xb

  const CellSummary& cell(Method method, std::size_t xb_size) const;
};

// Seed of the simulated dataset for one (xb_size, run) cell. Methods share it
// so every method sees the same data within a run.
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t xb_size,
                       std::size_t run_index);

// Precision is 1 for an empty selection; recall is relative to the parents.
double precision(const std::vector<FeatureIndex>& selected,
                 const std::vector<FeatureIndex>& parents);
double recall(const std::vector<FeatureIndex>& selected,
              const std::vector<FeatureIndex>& parents);

// Features a method selects on one dataset.
std::vector<FeatureIndex> fit_method(Method method, const Dataset& data,
                                     const ExperimentGrid& grid);

IdentificationTable run_identification(const ExperimentGrid& grid);

struct RuntimePoint {
  Method method = Method::kScm;
  std::size_t xb_size = 0;
  std::size_t n_features = 0;
  double median_wall_time_s = 0.0;
  std::size_t samples = 0;  // timed fits behind the median
};

// Single-threaded wall time of the fit alone (data generation excluded).
// For each cell, n_runs datasets are fitted `repeats` times; the cell value
// is the median over datasets of the fastest repeat.
std::vector<RuntimePoint> run_runtime_benchmark(const ExperimentGrid& grid,
                                                std::size_t repeats);

void write_identification_csv(std::ostream& out,
                              const IdentificationTable& table);
void write_summary_csv(std::ostream& out, const IdentificationTable& table);
void write_runtime_csv(std::ostream& out,
                       const std::vector<RuntimePoint>& points);
// Tidy CSVs: runtime per |X_B| and precision/recall per |X_B|.
void write_runtime_plot_csv(std::ostream& out,
                            const IdentificationTable& table);
void write_precision_recall_plot_csv(std::ostream& out,
                                     const IdentificationTable& table);

nlohmann::json manifest(const ExperimentGrid& grid);

// Writes identification.csv, summary.csv, manifest.json and, with
// plot_data, fig_runtime.csv and fig_precision_recall.csv into dir.
void write_experiment_outputs(const std::filesystem::path& dir,
                              const ExperimentGrid& grid,
                              const IdentificationTable& table,
                              bool plot_data);

}  // namespace icscm::harness
