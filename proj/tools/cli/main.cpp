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

#include <CLI11.hpp>
#include <Eigen/Core>
#include <iostream>

#include "cli/runners.hpp"

// Exit codes: 0 all records pass, 1 check failures, 2 configuration or
// schema errors, 3 runtime budget exceeded.

int main(int argc, char** argv) {
  CLI::App app{"resolvent-algebra verification suites"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir;
  uint64_t seed = 0;
  bool seed_set = false;
  double tolerance_scale = 1.0;
  int threads = 1;
  app.add_option("--config", config_path, "JSON experiment configuration");
  app.add_option("--out", out_dir, "output directory for report and CSV files");
  app.add_option("--seed", seed, "seed override for randomized suites")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--threads", threads, "linear-algebra thread count");
  app.add_option("--tolerance-scale", tolerance_scale, "scale factor applied to tolerances");

  const char* commands[] = {"relations", "rep",     "laplace", "quasifree",
                            "dirac",     "cocycle", "lattice", "decompose"};
  const char* briefs[] = {"defining-relation rewriting suite",
                          "truncated-representation convergence suite",
                          "Laplace-transform bridge to the direct solve",
                          "quasifree values against the Fock oracle",
                          "Dirac constraint-state suite",
                          "cocycle kernel and Hilbert-Schmidt analytics",
                          "lattice ground states, sandwich and superadditivity",
                          "exact symplectic basis and regularity decompositions"};
  for (size_t i = 0; i < std::size(commands); ++i) app.add_subcommand(commands[i], briefs[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Eigen::setNbThreads(std::max(1, threads));
  std::string command = app.get_subcommands().front()->get_name();
  try {
    ralg::cli::ExperimentConfig cfg = ralg::cli::load_config(command, config_path);
    if (seed_set) cfg.seed_override = seed;
    cfg.tolerance_scale = tolerance_scale;
    cfg.threads = threads;
    cfg.out_dir = out_dir;
    ralg::cli::Report report = ralg::cli::run(cfg);
    std::cout << report.to_text();
    report.write(out_dir);
    return report.all_passed() ? 0 : 1;
  } catch (const ralg::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ralg::cli::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
