// Copyright 2026 the resolvalg authors
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

// Experiment configuration: one JSON document, schema-validated per
// subcommand with unknown keys rejected; seeds are mandatory for the
// randomized suites.

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>

#include "resolvalg/dynamics.hpp"
#include "resolvalg/symplectic.hpp"

namespace ralg::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string command;
  nlohmann::json doc;
  std::optional<uint64_t> seed_override;
  double tolerance_scale = 1.0;
  int threads = 1;
  std::string out_dir;

  /// Validated field access with defaults; throws ConfigError on type
  /// mismatches.
  uint64_t seed(bool required) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  std::vector<double> number_list(const std::string& key, std::vector<double> fallback) const;
  SymplecticSpace<double> space(int fallback_modes) const;
  Potential potential() const;
  std::optional<double> budget_seconds() const;
};

/// Parses the config file (or "{}" when path is empty) and validates the
/// schema for the given subcommand.
ExperimentConfig load_config(const std::string& command, const std::string& path);

/// Validation for an in-memory document (used by tests).
ExperimentConfig validate_config(const std::string& command, nlohmann::json doc);

}  // namespace ralg::cli
