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

// Command-line front end: simulate, fit, predict, prune, icp, experiment,
// benchmark.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 data error,
// 4 infeasible computation refused.

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "icscm/errors.hpp"
#include "icscm/harness.hpp"
#include "icscm/icp.hpp"
#include "icscm/icscm.hpp"
#include "icscm/io.hpp"
#include "icscm/scm.hpp"
#include "icscm/simd/kernels.hpp"
#include "icscm/simulator.hpp"

namespace fs = std::filesystem;
using icscm::io::format_fixed;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInfeasible = 4;

// "1..7", "20,50", "1..3,10"
std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  auto to_size = [&](std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw icscm::ConfigError("bad size list '" + text + "'");
    }
    return v;
  };
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_size(item));
      continue;
    }
    const std::size_t lo = to_size(std::string_view(item).substr(0, dots));
    const std::size_t hi = to_size(std::string_view(item).substr(dots + 2));
    if (hi < lo) throw icscm::ConfigError("empty range '" + item + "'");
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw icscm::ConfigError("empty size list");
  return out;
}

std::vector<icscm::harness::Method> parse_methods(const std::string& text) {
  std::vector<icscm::harness::Method> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto m = icscm::harness::parse_method(item);
    if (!m) throw icscm::ConfigError("unknown method '" + item + "'");
    out.push_back(*m);
  }
  if (out.empty()) throw icscm::ConfigError("no methods given");
  return out;
}

icscm::stats::DofRule parse_dof(const std::string& text) {
  const auto rule = icscm::stats::parse_dof_rule(text);
  if (!rule) throw icscm::ConfigError("unknown dof rule '" + text + "'");
  return *rule;
}

icscm::stats::TestMethod parse_test(const std::string& text) {
  const auto method = icscm::stats::parse_test_method(text);
  if (!method) throw icscm::ConfigError("unknown test '" + text + "'");
  return *method;
}

std::string feature_label(const icscm::Dataset& data, icscm::FeatureIndex f,
                          const std::vector<std::string>& roles) {
  std::string label = data.feature_names()[f];
  if (f < roles.size()) label += " (" + roles[f] + ")";
  return label;
}

void require_environments(const icscm::Dataset& data) {
  if (data.n_distinct_envs() < 2) {
    throw icscm::InputError(
        "dataset holds a single environment; invariance is untestable");
  }
}

std::vector<std::string> load_roles(const std::string& truth_path) {
  if (truth_path.empty()) return {};
  const auto doc = icscm::io::read_json(truth_path);
  const auto& truth = doc.contains("ground_truth") ? doc["ground_truth"] : doc;
  return icscm::io::ground_truth_from_json(truth).role_names();
}

void print_json(const nlohmann::json& doc) {
  std::cout << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::size_t xb = 3;
  std::size_t n_env = 2;
  std::size_t samples = 10000;
  double eps_y = 0.05;
  double eps_xc = 0.05;
  double eps_xb = 0.5;
  std::vector<double> p_xa;
  std::uint64_t seed = 0;
  std::string out;
  bool force = false;
  bool manifest = false;
};

int run_simulate(const SimulateArgs& a) {
  icscm::SimConfig config;
  config.n_env = a.n_env;
  config.n_samples_per_env = a.samples;
  config.n_distractors = a.xb;
  config.eps_y = a.eps_y;
  config.eps_xc = a.eps_xc;
  config.eps_xb = a.eps_xb;
  config.seed = a.seed;
  if (!a.p_xa.empty()) {
    if (a.p_xa.size() != 2 * a.n_env) {
      throw icscm::ConfigError("--p-xa needs 2 values per environment");
    }
    config.p_xa.clear();
    for (std::size_t e = 0; e < a.n_env; ++e) {
      config.p_xa.push_back({a.p_xa[2 * e], a.p_xa[2 * e + 1]});
    }
  } else if (a.n_env != config.p_xa.size()) {
    if (a.n_env == 1) {
      config.p_xa.resize(1);
    } else {
      throw icscm::ConfigError(
          "--n-env other than 2 needs --p-xa with 2 values per environment");
    }
  }
  if (a.n_env < 2) {
    if (!a.force) {
      throw icscm::ConfigError(
          "invariance methods need at least 2 environments (use --force to "
          "simulate anyway)");
    }
    std::cerr << "warning: single-environment data; icscm and icp will "
                 "refuse it\n";
  }
  config.validate();
  if (a.manifest) print_json(icscm::io::to_json(config));

  const auto sim = icscm::simulate(config);
  fs::create_directories(a.out);
  icscm::io::write_dataset_csv(fs::path(a.out) / "dataset.csv", sim.data);
  icscm::io::write_json(fs::path(a.out) / "ground_truth.json",
                        {{"ground_truth", icscm::io::to_json(sim.truth)},
                         {"config", icscm::io::to_json(config)}});

  const auto& data = sim.data;
  const auto roles = sim.truth.role_names();
  std::cout << "rows: " << data.n_samples() << "\n"
            << "feature columns: " << data.n_features() << "\n";
  for (std::size_t j = 0; j < data.n_features(); ++j) {
    std::cout << "  P(" << feature_label(data, j, roles) << " = 1) = "
              << format_fixed(static_cast<double>(data.column_bits(j).count()) /
                                  data.n_samples(), 4)
              << "\n";
  }
  std::cout << "P(y = 1) = "
            << format_fixed(static_cast<double>(data.label_bits().count()) /
                                data.n_samples(), 4)
            << "\n";
  for (std::size_t e = 0; e < data.n_envs(); ++e) {
    const auto& mask = data.env_mask(static_cast<icscm::EnvId>(e));
    const double n = static_cast<double>(mask.count());
    std::cout << "  env " << e << ": P(A1 = 1) = "
              << format_fixed(mask.and_count(data.column_bits(0)) / n, 4)
              << ", P(A2 = 1) = "
              << format_fixed(mask.and_count(data.column_bits(1)) / n, 4)
              << "\n";
  }
  const auto acc = icscm::oracle_accuracy(data, sim.truth);
  std::cout << "P(y = A1 AND A2) = " << format_fixed(acc.acc_parents, 4)
            << "\nP(y = C) = " << format_fixed(acc.acc_child, 4) << "\n"
            << "wrote " << (fs::path(a.out) / "dataset.csv").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct FitArgs {
  std::string data;
  std::string method = "icscm";
  double p = 1.0;
  std::size_t max_rules = 10;
  double alpha = 0.05;
  std::size_t min_leaf = 10;
  std::string leaf_test = "chi2";
  bool no_prune = false;
  bool disjunction = false;
  std::string out;
  std::string truth;
  bool manifest = false;
};

int run_fit(const FitArgs& a) {
  if (a.method != "scm" && a.method != "icscm") {
    throw icscm::ConfigError("--method must be scm or icscm");
  }
  icscm::ScmConfig scm{a.p, a.max_rules};
  icscm::IcscmConfig cfg;
  cfg.p = a.p;
  cfg.max_rules = a.max_rules;
  cfg.alpha = a.alpha;
  cfg.min_leaf = a.min_leaf;
  cfg.test_method = parse_test(a.leaf_test);
  cfg.prune = !a.no_prune;
  if (a.method == "scm") {
    scm.validate();
  } else {
    cfg.validate();
  }
  if (a.manifest) {
    print_json({{"method", a.method},
                {"data", a.data},
                {"p", a.p},
                {"max_rules", a.max_rules},
                {"alpha", a.alpha},
                {"min_leaf", a.min_leaf},
                {"leaf_test", a.leaf_test},
                {"prune", !a.no_prune},
                {"disjunction", a.disjunction}});
  }

  const auto data = icscm::io::read_dataset_csv(a.data);
  if (a.method == "icscm") require_environments(data);
  const auto roles = load_roles(a.truth);
  const auto train = a.disjunction ? icscm::with_negated_labels(data) : data;
  const auto rules = icscm::candidate_rules(train);
  icscm::FitReport report = a.method == "scm"
                                ? icscm::scm_fit(train, scm, rules)
                                : icscm::icscm_fit(train, cfg, rules);
  if (a.disjunction) report = icscm::to_disjunction(std::move(report));

  std::cout << "method: " << a.method
            << (a.disjunction ? " (disjunction)" : " (conjunction)") << "\n";
  for (std::size_t i = 0; i < report.iterations.size(); ++i) {
    const auto& it = report.iterations[i];
    std::cout << "  iter " << i + 1 << ": " << icscm::to_string(it.rule, &data)
              << "  utility=" << icscm::io::format_double(it.utility);
    if (it.leaf_p_value) {
      std::cout << "  leaf_p=" << format_fixed(*it.leaf_p_value, 4);
    }
    if (it.remaining_p_value) {
      std::cout << "  gamma=" << format_fixed(*it.remaining_p_value, 4);
    }
    std::cout << "\n";
  }
  for (const auto& r : report.pruned_rules) {
    std::cout << "  pruned: " << icscm::to_string(r, &data) << "\n";
  }
  std::cout << "selected features:";
  for (auto f : report.selected_features) {
    std::cout << " " << feature_label(data, f, roles);
  }
  std::cout << "\nstop_reason: " << icscm::to_string(report.stop_reason)
            << "\ntraining error: "
            << format_fixed(icscm::training_error(report.model, data), 4)
            << "\n";
  if (!a.out.empty()) {
    icscm::io::write_json(a.out, icscm::io::model_to_json(report, &data));
    std::cout << "wrote " << a.out << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct PredictArgs {
  std::string data;
  std::string model;
  std::string out;
  bool manifest = false;
};

int run_predict(const PredictArgs& a) {
  if (a.manifest) print_json({{"data", a.data}, {"model", a.model}});
  const auto data = icscm::io::read_dataset_csv(a.data);
  const auto report = icscm::io::model_from_json(icscm::io::read_json(a.model));
  const auto pred = report.model.predict(data);
  if (!a.out.empty()) {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw icscm::InputError("cannot open " + a.out);
    out << "prediction\n";
    for (auto v : pred) out << static_cast<int>(v) << "\n";
  }
  std::cout << "accuracy: "
            << format_fixed(1.0 - icscm::training_error(report.model, data), 4)
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct PruneArgs {
  std::string data;
  std::string model;
  double alpha = 0.05;
  std::string out;
  bool manifest = false;
};

int run_prune(const PruneArgs& a) {
  if (a.alpha <= 0.0 || a.alpha >= 1.0) {
    throw icscm::ConfigError("alpha must lie in (0, 1)");
  }
  if (a.manifest) {
    print_json({{"data", a.data}, {"model", a.model}, {"alpha", a.alpha}});
  }
  const auto data = icscm::io::read_dataset_csv(a.data);
  auto report = icscm::io::model_from_json(icscm::io::read_json(a.model));
  std::vector<icscm::PruneStep> steps;
  report.model = icscm::prune(report.model, data, a.alpha, &steps);
  for (const auto& s : steps) {
    report.pruned_rules.push_back(s.removed);
    std::cout << "removed " << icscm::to_string(s.removed, &data)
              << "  p=" << format_fixed(s.p_value, 4) << "\n";
  }
  report.selected_features = report.model.features();
  std::cout << "remaining rules: " << report.model.rules.size() << "\n";
  if (!a.out.empty()) {
    icscm::io::write_json(a.out, icscm::io::model_to_json(report, &data));
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct IcpArgs {
  std::string data;
  double alpha = 0.05;
  std::optional<std::size_t> max_subset;
  std::string dof = "all-strata";
  std::string out;
  std::string truth;
  bool manifest = false;
};

int run_icp(const IcpArgs& a) {
  icscm::IcpConfig cfg;
  cfg.alpha = a.alpha;
  cfg.max_subset_size = a.max_subset;
  cfg.dof_rule = parse_dof(a.dof);
  cfg.validate();
  if (a.manifest) {
    nlohmann::json doc = {{"data", a.data},
                          {"alpha", cfg.alpha},
                          {"dof", icscm::stats::to_string(cfg.dof_rule)}};
    doc["max_subset_size"] = a.max_subset ? nlohmann::json(*a.max_subset)
                                          : nlohmann::json(nullptr);
    print_json(doc);
  }
  const auto data = icscm::io::read_dataset_csv(a.data);
  require_environments(data);
  const auto roles = load_roles(a.truth);
  const auto result = icscm::icp_fit(data, cfg);
  std::cout << "subsets tested: " << result.tests.size()
            << "\naccepted: " << result.accepted_count << "\nparents:";
  for (auto f : result.parents) std::cout << " " << feature_label(data, f, roles);
  std::cout << "\n";
  if (!a.out.empty()) {
    nlohmann::json tests = nlohmann::json::array();
    for (const auto& t : result.tests) {
      tests.push_back({{"subset", t.subset},
                       {"p_value", t.p_value},
                       {"accepted", t.accepted}});
    }
    icscm::io::write_json(a.out,
                          {{"parents", result.parents}, {"tests", tests}});
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct GridArgs {
  std::string methods = "scm,icscm,icp";
  std::string xb = "1..7";
  std::size_t runs = 20;
  bool full = false;
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  std::size_t jobs = 1;
  std::string out = "results";
  bool plot_data = false;
  bool no_wall_time = false;
  double p = 1.0;
  std::size_t max_rules = 10;
  double alpha = 0.05;
  bool no_prune = false;
  std::optional<std::size_t> icp_max_subset;
  std::string icp_dof = "all-strata";
  std::size_t repeats = 3;
  bool manifest = false;
};

icscm::harness::ExperimentGrid build_grid(const GridArgs& a) {
  icscm::harness::ExperimentGrid grid;
  grid.methods = parse_methods(a.methods);
  grid.xb_sizes = parse_size_list(a.xb);
  grid.n_runs = a.full ? 100 : a.runs;
  grid.master_seed = a.seed;
  grid.base.n_samples_per_env = a.samples;
  grid.scm = icscm::ScmConfig{a.p, a.max_rules};
  grid.icscm.p = a.p;
  grid.icscm.max_rules = a.max_rules;
  grid.icscm.alpha = a.alpha;
  grid.icscm.prune = !a.no_prune;
  grid.icp.alpha = a.alpha;
  grid.icp.max_subset_size = a.icp_max_subset;
  grid.icp.dof_rule = parse_dof(a.icp_dof);
  grid.jobs = a.jobs;
  grid.record_wall_time = !a.no_wall_time;
  grid.validate();
  return grid;
}

int run_experiment(const GridArgs& a) {
  const auto grid = build_grid(a);
  if (a.manifest) print_json(icscm::harness::manifest(grid));
  const auto table = icscm::harness::run_identification(grid);
  icscm::harness::write_experiment_outputs(a.out, grid, table, a.plot_data);
  std::cout << "method  xb  rate  precision  recall\n";
  for (const auto& c : table.cells) {
    std::printf("%-6s %3zu  %.2f  %.3f      %.3f\n",
                std::string(icscm::harness::to_string(c.method)).c_str(),
                c.xb_size, c.identification_rate, c.mean_precision,
                c.mean_recall);
  }
  std::cout << "wrote " << (fs::path(a.out) / "summary.csv").string() << "\n";
  return 0;
}

int run_benchmark(const GridArgs& a) {
  const auto grid = build_grid(a);
  if (a.manifest) print_json(icscm::harness::manifest(grid));
  std::cerr << "kernels: " << icscm::simd::active_kernels().name << "\n";
  const auto points = icscm::harness::run_runtime_benchmark(grid, a.repeats);
  fs::create_directories(a.out);
  {
    std::ofstream out(fs::path(a.out) / "runtime.csv", std::ios::binary);
    if (!out) throw icscm::InputError("cannot write runtime.csv");
    icscm::harness::write_runtime_csv(out, points);
  }
  icscm::io::write_json(fs::path(a.out) / "manifest.json",
                        icscm::harness::manifest(grid));
  icscm::harness::write_runtime_csv(std::cout, points);
  return 0;
}

void add_grid_options(CLI::App* cmd, GridArgs& a, const std::string& methods,
                      const std::string& xb, std::size_t runs) {
  a.methods = methods;
  a.xb = xb;
  a.runs = runs;
  cmd->add_option("--methods", a.methods, "Comma list of scm,icscm,icp")
      ->capture_default_str();
  cmd->add_option("--xb", a.xb, "Distractor counts, e.g. 1..7 or 20,50")
      ->capture_default_str();
  cmd->add_option("--runs", a.runs, "Seeds per cell")->capture_default_str();
  cmd->add_option("--seed", a.seed, "Master seed")->capture_default_str();
  cmd->add_option("--samples", a.samples, "Samples per environment")
      ->capture_default_str();
  cmd->add_option("-o,--out", a.out, "Output directory")->capture_default_str();
  cmd->add_option("--p", a.p, "Utility trade-off")->capture_default_str();
  cmd->add_option("--max-rules", a.max_rules, "Maximum conjunction length")
      ->capture_default_str();
  cmd->add_option("--alpha", a.alpha, "Independence threshold")
      ->capture_default_str();
  cmd->add_flag("--no-prune", a.no_prune, "Disable ICSCM pruning");
  cmd->add_option("--icp-max-subset", a.icp_max_subset,
                  "Only test ICP subsets up to this size");
  cmd->add_option("--icp-dof", a.icp_dof,
                  "ICP dof rule: all-strata or nonzero-marginals")
      ->capture_default_str();
  cmd->add_flag("--manifest", a.manifest, "Print the resolved configuration");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set Covering Machines with invariance-based causal rule "
               "selection"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a simulated dataset");
  sim_cmd->add_option("--xb", sim.xb, "Number of distractor features")
      ->capture_default_str();
  sim_cmd->add_option("--n-env", sim.n_env, "Number of environments")
      ->capture_default_str();
  sim_cmd->add_option("--samples", sim.samples, "Samples per environment")
      ->capture_default_str();
  sim_cmd->add_option("--eps-y", sim.eps_y, "Label flip probability")
      ->capture_default_str();
  sim_cmd->add_option("--eps-xc", sim.eps_xc,
                      "Probability that C copies the environment")
      ->capture_default_str();
  sim_cmd->add_option("--eps-xb", sim.eps_xb, "P(B_i = 1)")
      ->capture_default_str();
  sim_cmd->add_option("--p-xa", sim.p_xa,
                      "P(A1=1) P(A2=1) for each environment, flattened");
  sim_cmd->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  sim_cmd->add_option("-o,--out", sim.out, "Output directory")->required();
  sim_cmd->add_flag("--force", sim.force, "Allow a single environment");
  sim_cmd->add_flag("--manifest", sim.manifest,
                    "Print the resolved configuration");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Learn a conjunction with SCM or ICSCM");
  fit_cmd->add_option("-i,--data", fit.data, "Dataset CSV")->required();
  fit_cmd->add_option("--method", fit.method, "scm or icscm")
      ->capture_default_str();
  fit_cmd->add_option("--p", fit.p, "Utility trade-off")->capture_default_str();
  fit_cmd->add_option("--max-rules", fit.max_rules, "Maximum conjunction length")
      ->capture_default_str();
  fit_cmd->add_option("--alpha", fit.alpha, "Independence threshold")
      ->capture_default_str();
  fit_cmd->add_option("--min-leaf", fit.min_leaf,
                      "Smallest leaf that is tested")
      ->capture_default_str();
  fit_cmd->add_option("--leaf-test", fit.leaf_test, "chi2 or gtest")
      ->capture_default_str();
  auto* prune_flag = fit_cmd->add_flag("--prune", "Prune the model (default)");
  fit_cmd->add_flag("--no-prune", fit.no_prune, "Skip pruning")
      ->excludes(prune_flag);
  fit_cmd->add_flag("--disjunction", fit.disjunction,
                    "Learn a disjunction instead of a conjunction");
  fit_cmd->add_option("-o,--out", fit.out, "Model JSON output");
  fit_cmd->add_option("--truth", fit.truth,
                      "ground_truth.json to annotate feature roles");
  fit_cmd->add_flag("--manifest", fit.manifest,
                    "Print the resolved configuration");

  PredictArgs pred;
  auto* pred_cmd = app.add_subcommand("predict", "Apply a saved model");
  pred_cmd->add_option("-i,--data", pred.data, "Dataset CSV")->required();
  pred_cmd->add_option("--model", pred.model, "Model JSON")->required();
  pred_cmd->add_option("-o,--out", pred.out, "Predictions CSV");
  pred_cmd->add_flag("--manifest", pred.manifest,
                     "Print the resolved configuration");

  PruneArgs prune;
  auto* prune_cmd = app.add_subcommand("prune", "Prune a saved model");
  prune_cmd->add_option("-i,--data", prune.data, "Dataset CSV")->required();
  prune_cmd->add_option("--model", prune.model, "Model JSON")->required();
  prune_cmd->add_option("--alpha", prune.alpha, "Independence threshold")
      ->capture_default_str();
  prune_cmd->add_option("-o,--out", prune.out, "Pruned model JSON");
  prune_cmd->add_flag("--manifest", prune.manifest,
                      "Print the resolved configuration");

  IcpArgs icp;
  auto* icp_cmd = app.add_subcommand("icp", "Invariant causal prediction");
  icp_cmd->add_option("-i,--data", icp.data, "Dataset CSV")->required();
  icp_cmd->add_option("--alpha", icp.alpha, "Independence threshold")
      ->capture_default_str();
  icp_cmd->add_option("--max-subset-size", icp.max_subset,
                      "Only test subsets up to this size");
  icp_cmd->add_option("--dof", icp.dof, "all-strata or nonzero-marginals")
      ->capture_default_str();
  icp_cmd->add_option("-o,--out", icp.out, "JSON with every subset test");
  icp_cmd->add_option("--truth", icp.truth,
                      "ground_truth.json to annotate feature roles");
  icp_cmd->add_flag("--manifest", icp.manifest,
                    "Print the resolved configuration");

  GridArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Identification-rate grid");
  add_grid_options(exp_cmd, exp, "scm,icscm,icp", "1..7", 20);
  exp_cmd->add_flag("--full", exp.full, "100 runs per cell");
  exp_cmd->add_option("--jobs", exp.jobs, "Worker threads")
      ->capture_default_str();
  exp_cmd->add_flag("--plot-data", exp.plot_data, "Also write tidy plot CSVs");
  exp_cmd->add_flag("--no-wall-time", exp.no_wall_time,
                    "Write 0 for wall times (byte-reproducible output)");

  GridArgs bench;
  auto* bench_cmd = app.add_subcommand("benchmark", "Runtime versus |X_B|");
  add_grid_options(bench_cmd, bench, "icscm,icp", "2..10", 3);
  bench.out = "benchmark";
  bench_cmd->add_option("--repeats", bench.repeats, "Timed fits per dataset")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sim_cmd) return run_simulate(sim);
    if (*fit_cmd) return run_fit(fit);
    if (*pred_cmd) return run_predict(pred);
    if (*prune_cmd) return run_prune(prune);
    if (*icp_cmd) return run_icp(icp);
    if (*exp_cmd) return run_experiment(exp);
    if (*bench_cmd) return run_benchmark(bench);
  } catch (const icscm::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const icscm::InfeasibleError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const icscm::InputError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
