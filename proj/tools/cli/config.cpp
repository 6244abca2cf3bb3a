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

#include "cli/config.hpp"

#include <fstream>
#include <map>
#include <set>

#include "resolvalg/serialize.hpp"

namespace ralg::cli {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> kSchema = {
      {"relations", {"seed", "space", "instances", "budget", "budget_seconds"}},
      {"rep", {"space", "cutoffs", "norm_lambdas", "budget_seconds"}},
      {"laplace", {"space", "cutoff", "lambdas", "quad_tol", "budget_seconds"}},
      {"quasifree", {"seed", "directions", "cutoff_one_mode", "cutoff_two_mode", "budget_seconds"}},
      {"dirac", {"seed", "cutoff", "products", "budget_seconds"}},
      {"cocycle", {"t", "budget_seconds"}},
      {"lattice",
       {"sites", "cutoff", "potential", "mus", "dense_budget", "budget_seconds"}},
      {"decompose", {"seed", "instances", "dims", "budget_seconds"}},
  };
  return kSchema;
}

}  // namespace

uint64_t ExperimentConfig::seed(bool required) const {
  if (seed_override) return *seed_override;
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_integer() || doc.at("seed").get<long long>() < 0)
      throw ConfigError("config: seed must be a nonnegative integer");
    return doc.at("seed").get<uint64_t>();
  }
  if (required)
    throw ConfigError("config: randomized suite requires a seed (config key or --seed)");
  return 0;
}

double ExperimentConfig::number(const std::string& key, double fallback) const {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number()) throw ConfigError("config: " + key + " must be a number");
  return doc.at(key).get<double>();
}

int ExperimentConfig::integer(const std::string& key, int fallback) const {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number_integer()) throw ConfigError("config: " + key + " must be an integer");
  return doc.at(key).get<int>();
}

std::vector<double> ExperimentConfig::number_list(const std::string& key,
                                                  std::vector<double> fallback) const {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_array()) throw ConfigError("config: " + key + " must be an array");
  std::vector<double> out;
  for (const auto& x : doc.at(key)) {
    if (!x.is_number()) throw ConfigError("config: " + key + " entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

SymplecticSpace<double> ExperimentConfig::space(int fallback_modes) const {
  if (!doc.contains("space")) return SymplecticSpace<double>::standard(fallback_modes);
  try {
    return space_from_json(doc.at("space"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: bad space: ") + e.what());
  }
}

Potential ExperimentConfig::potential() const {
  if (!doc.contains("potential"))
    return Potential::closed_form([](double) { return 0.0; }, 0.0);
  const auto& p = doc.at("potential");
  if (!p.is_object() || !p.contains("type")) throw ConfigError("config: potential needs a type");
  std::string type = p.at("type").get<std::string>();
  std::set<std::string> known;
  if (type == "zero") {
    known = {"type"};
  } else if (type == "gaussian") {
    known = {"type", "amplitude", "width"};
  } else if (type == "sampled") {
    known = {"type", "x", "v"};
  } else {
    throw ConfigError("config: unknown potential type " + type);
  }
  for (auto it = p.begin(); it != p.end(); ++it)
    if (!known.count(it.key())) throw ConfigError("config: unknown potential key " + it.key());
  if (type == "zero") return Potential::closed_form([](double) { return 0.0; }, 0.0);
  if (type == "gaussian") {
    if (!p.contains("amplitude") || !p.contains("width"))
      throw ConfigError("config: gaussian potential needs amplitude and width");
    return Potential::gaussian_bump(p.at("amplitude").get<double>(), p.at("width").get<double>());
  }
  std::vector<double> xs, vs;
  for (const auto& x : p.at("x")) xs.push_back(x.get<double>());
  for (const auto& x : p.at("v")) vs.push_back(x.get<double>());
  if (xs.size() != vs.size()) throw ConfigError("config: sampled potential length mismatch");
  try {
    return Potential::sampled(std::move(xs), std::move(vs));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: bad sampled potential: ") + e.what());
  }
}

std::optional<double> ExperimentConfig::budget_seconds() const {
  if (!doc.contains("budget_seconds")) return std::nullopt;
  return doc.at("budget_seconds").get<double>();
}

ExperimentConfig validate_config(const std::string& command, nlohmann::json doc) {
  auto it = schema().find(command);
  if (it == schema().end()) throw ConfigError("config: unknown command " + command);
  if (doc.is_null()) doc = nlohmann::json::object();
  if (!doc.is_object()) throw ConfigError("config: document must be a JSON object");
  for (auto field = doc.begin(); field != doc.end(); ++field)
    if (!it->second.count(field.key()))
      throw ConfigError("config: unknown key '" + field.key() + "' for command " + command);
  ExperimentConfig cfg;
  cfg.command = command;
  cfg.doc = std::move(doc);
  return cfg;
}

ExperimentConfig load_config(const std::string& command, const std::string& path) {
  nlohmann::json doc = nlohmann::json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config: parse error: ") + e.what());
    }
  }
  return validate_config(command, std::move(doc));
}

}  // namespace ralg::cli
