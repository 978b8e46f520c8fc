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

#include "icscm/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "icscm/errors.hpp"

namespace icscm::io {
namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return cells;
}

std::string_view trim_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

std::string where(std::size_t line, std::size_t column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::uint32_t parse_cell(std::string_view cell, std::size_t line,
                         std::size_t column, std::uint32_t max_value) {
  std::uint32_t value = 0;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (cell.empty() || ec != std::errc() || ptr != end) {
    throw InputError(where(line, column) + ": expected an integer, got '" +
                     std::string(cell) + "'");
  }
  if (value > max_value) {
    throw InputError(where(line, column) + ": value " + std::to_string(value) +
                     (max_value == 1 ? " is not 0 or 1" : " is out of range"));
  }
  return value;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty dataset file");
  const auto header = split_commas(trim_cr(line));
  if (header.size() < 3 || header[header.size() - 2] != "y" ||
      header.back() != "e") {
    throw InputError(
        "line 1: header must list the feature columns followed by y,e");
  }
  const std::size_t d = header.size() - 2;
  std::vector<std::string> names(header.begin(), header.end() - 2);

  std::vector<std::vector<std::uint8_t>> columns(d);
  std::vector<std::uint8_t> labels;
  std::vector<EnvId> envs;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim_cr(line);
    if (text.empty()) continue;
    const auto cells = split_commas(text);
    if (cells.size() != header.size()) {
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " columns, got " +
                       std::to_string(cells.size()));
    }
    for (std::size_t j = 0; j < d; ++j) {
      columns[j].push_back(
          static_cast<std::uint8_t>(parse_cell(cells[j], line_no, j + 1, 1)));
    }
    labels.push_back(
        static_cast<std::uint8_t>(parse_cell(cells[d], line_no, d + 1, 1)));
    envs.push_back(parse_cell(cells[d + 1], line_no, d + 2, 1u << 20));
  }
  if (labels.empty()) throw InputError("dataset file has no sample rows");
  return Dataset(std::move(columns), std::move(labels), std::move(envs),
                 std::move(names));
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return read_dataset_csv(in);
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  std::string buf;
  for (const auto& name : data.feature_names()) {
    buf += name;
    buf += ',';
  }
  buf += "y,e\n";
  for (std::size_t i = 0; i < data.n_samples(); ++i) {
    for (std::size_t j = 0; j < data.n_features(); ++j) {
      buf += static_cast<char>('0' + data.value(i, j));
      buf += ',';
    }
    buf += static_cast<char>('0' + data.labels()[i]);
    buf += ',';
    buf += std::to_string(data.envs()[i]);
    buf += '\n';
  }
  out << buf;
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& data) {
  auto out = open_out(path);
  write_dataset_csv(out, data);
}

nlohmann::json to_json(const Rule& rule) {
  return {{"feature_index", rule.feature},
          {"expected_value", rule.expected_value}};
}

nlohmann::json model_to_json(const FitReport& report, const Dataset* data) {
  nlohmann::json rules = nlohmann::json::array();
  for (const Rule& r : report.model.rules) {
    auto item = to_json(r);
    if (data != nullptr) item["feature_name"] = data->feature_names()[r.feature];
    rules.push_back(std::move(item));
  }
  nlohmann::json iterations = nlohmann::json::array();
  for (const IterationLog& it : report.iterations) {
    nlohmann::json item = {{"rule", to_json(it.rule)}, {"utility", it.utility}};
    if (it.leaf_p_value) item["leaf_p_value"] = *it.leaf_p_value;
    if (it.remaining_p_value) item["remaining_p_value"] = *it.remaining_p_value;
    iterations.push_back(std::move(item));
  }
  nlohmann::json pruned = nlohmann::json::array();
  for (const Rule& r : report.pruned_rules) pruned.push_back(to_json(r));
  return {
      {"mode", report.model.disjunction ? "disjunction" : "conjunction"},
      {"rules", std::move(rules)},
      {"selected_features", report.selected_features},
      {"stop_reason", std::string(to_string(report.stop_reason))},
      {"iterations", std::move(iterations)},
      {"pruned_rules", std::move(pruned)},
  };
}

FitReport model_from_json(const nlohmann::json& doc) {
  FitReport report;
  try {
    const std::string mode = doc.at("mode").get<std::string>();
    if (mode != "conjunction" && mode != "disjunction") {
      throw InputError("model mode must be conjunction or disjunction");
    }
    report.model.disjunction = mode == "disjunction";
    for (const auto& item : doc.at("rules")) {
      const auto value = item.at("expected_value").get<int>();
      if (value != 0 && value != 1) {
        throw InputError("rule expected_value must be 0 or 1");
      }
      report.model.rules.push_back(
          Rule{item.at("feature_index").get<FeatureIndex>(),
               static_cast<std::uint8_t>(value)});
    }
    if (doc.contains("stop_reason")) {
      const auto reason =
          parse_stop_reason(doc.at("stop_reason").get<std::string>());
      if (!reason) throw InputError("unknown stop_reason");
      report.stop_reason = *reason;
    }
  } catch (const nlohmann::json::exception& err) {
    throw InputError(std::string("malformed model JSON: ") + err.what());
  }
  report.selected_features = report.model.features();
  return report;
}

nlohmann::json to_json(const SimConfig& config) {
  nlohmann::json p_xa = nlohmann::json::array();
  for (const auto& row : config.p_xa) p_xa.push_back({row[0], row[1]});
  return {
      {"n_env", config.n_env},
      {"n_samples_per_env", config.n_samples_per_env},
      {"n_distractors", config.n_distractors},
      {"eps_y", config.eps_y},
      {"eps_xc", config.eps_xc},
      {"eps_xb", config.eps_xb},
      {"p_xa", std::move(p_xa)},
      {"seed", config.seed},
  };
}

nlohmann::json to_json(const GroundTruth& truth) {
  return {
      {"parent_indices", truth.parent_indices},
      {"distractor_indices", truth.distractor_indices},
      {"child_index", truth.child_index},
      {"roles", truth.role_names()},
  };
}

GroundTruth ground_truth_from_json(const nlohmann::json& doc) {
  try {
    GroundTruth truth;
    truth.parent_indices =
        doc.at("parent_indices").get<std::vector<FeatureIndex>>();
    truth.distractor_indices =
        doc.at("distractor_indices").get<std::vector<FeatureIndex>>();
    truth.child_index = doc.at("child_index").get<FeatureIndex>();
    return truth;
  } catch (const nlohmann::json::exception& err) {
    throw InputError(std::string("malformed ground truth JSON: ") + err.what());
  }
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& err) {
    throw InputError(path.string() + ": " + err.what());
  }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                       std::chars_format::fixed, decimals);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

}  // namespace icscm::io
