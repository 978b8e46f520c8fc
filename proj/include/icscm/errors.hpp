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

#include <stdexcept>
#include <string>

namespace icscm {

// Malformed or inconsistent input data (dimension mismatch, bad CSV cell).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid hyperparameters or a configuration the algorithm cannot run with.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested computation is refused because it would not finish in
// reasonable time (exhaustive subset search over too many features).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace icscm
