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

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "icscm/data_model.hpp"
#include "icscm/simulator.hpp"

namespace icscm::io {

// Dataset CSV: header "<feature names...>,y,e", one sample per row, cells are
// ASCII integers (features and y in {0, 1}). Throws InputError with the
// line and column of the first bad cell.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);
void write_dataset_csv(std::ostream& out, const Dataset& data);
void write_dataset_csv(const std::filesystem::path& path, const Dataset& data);

nlohmann::json to_json(const Rule& rule);
nlohmann::json model_to_json(const FitReport& report, const Dataset* data);
// Reads the model and (when present) its stop reason back.
FitReport model_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const SimConfig& config);
nlohmann::json to_json(const GroundTruth& truth);
GroundTruth ground_truth_from_json(const nlohmann::json& doc);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

// Locale-independent shortest round-trip formatting with '.' as separator.
std::string format_double(double value);
// Fixed notation with the given number of decimals.
std::string format_fixed(double value, int decimals);

}  // namespace icscm::io
