// Copyright 2026 The qsc Authors
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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsc/errors.hpp"
#include "qsc/experiment.hpp"
#include "qsc/plot.hpp"
#include "qsc/version.hpp"

#include "fetch_data.hpp"

namespace {

constexpr int kExitRunError = 1;
constexpr int kExitConfigError = 2;

int exit_code_for(const qsc::Error& e) {
  return e.category() == qsc::ErrorCategory::Config ? kExitConfigError : kExitRunError;
}

qsc::FullConfig load_or_default(const std::string& config_path) {
  if (config_path.empty()) return qsc::FullConfig{};
  return qsc::load_config(config_path);
}

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::string encoding;
  std::string scenario;
  std::string output_dir;
  std::string preset;
  std::string data_dir;

  void apply(qsc::ExperimentConfig& cfg) const {
    if (seed) cfg.seed = *seed;
    if (!encoding.empty()) cfg.encoding = qsc::encoding_from_string(encoding);
    if (!scenario.empty()) cfg.scenario = qsc::scenario_from_string(scenario);
    if (!output_dir.empty()) cfg.output.dir = output_dir;
    if (!preset.empty()) cfg.noise_preset = preset;
    if (!data_dir.empty()) {
      cfg.data.dir = data_dir;
      cfg.data.synthetic = false;
    }
  }
};

void print_report(const qsc::RunReport& report) {
  std::printf("run %s: final accuracy %.4f (%.2f s)\n", report.run_name.c_str(),
              report.final_accuracy, report.total_wall_time_s);
  std::printf("  metrics: %s\n", report.metrics_csv.c_str());
  std::printf("  report:  %s\n", report.report_json.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swap-test variational classifier: encoding comparison experiments"};
  app.set_version_flag("--version", qsc::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;

  auto* run = app.add_subcommand("run", "train and evaluate one experiment");
  run->add_option("--config", config_path, "experiment config file (TOML)");
  run->add_option("--seed", ov.seed, "override the experiment seed");
  run->add_option("--encoding", ov.encoding, "basis|rotation|amplitude");
  run->add_option("--scenario", ov.scenario, "pure|noisy|noisy_dd");
  run->add_option("--output-dir", ov.output_dir, "directory for run artifacts");
  run->add_option("--preset", ov.preset, "noise preset for noisy scenarios");
  run->add_option("--data-dir", ov.data_dir, "directory with the IDX image/label pair");

  auto* grid = app.add_subcommand("grid", "run the scenario x encoding grid");
  grid->add_option("--config", config_path, "experiment config file (TOML)");
  grid->add_option("--seed", ov.seed, "base seed; cells use seed + cell index");
  grid->add_option("--output-dir", ov.output_dir, "directory for run artifacts");
  grid->add_option("--preset", ov.preset, "noise preset for noisy scenarios");
  grid->add_option("--data-dir", ov.data_dir, "directory with the IDX image/label pair");
  std::vector<std::string> grid_encodings;
  std::vector<std::string> grid_scenarios;
  int grid_repeats = 0;
  int grid_jobs = 0;
  grid->add_option("--encodings", grid_encodings, "encodings to sweep")->delimiter(',');
  grid->add_option("--scenarios", grid_scenarios, "scenarios to sweep")->delimiter(',');
  grid->add_option("--repeats", grid_repeats, "repeated runs per cell");
  grid->add_option("--jobs", grid_jobs, "worker threads for grid cells");

  auto* plot = app.add_subcommand("plot", "render metrics CSVs as SVG training plots");
  std::vector<std::string> csv_paths;
  std::string plot_dir = "plots";
  plot->add_option("csv", csv_paths, "metrics CSV files")->required()->expected(-1);
  plot->add_option("--output-dir", plot_dir, "directory for the SVG files");

  auto* fetch = app.add_subcommand("fetch-data", "download the MNIST IDX files");
  std::string fetch_dir = "data/mnist-full";
  std::string fetch_base = "https://ossci-datasets.s3.amazonaws.com/mnist";
  fetch->add_option("--dir", fetch_dir, "destination directory");
  fetch->add_option("--base-url", fetch_base, "mirror base URL");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      qsc::FullConfig full = load_or_default(config_path);
      ov.apply(full.experiment);
      print_report(qsc::run_experiment(full.experiment));
      return 0;
    }
    if (grid->parsed()) {
      qsc::FullConfig full = load_or_default(config_path);
      ov.apply(full.experiment);
      if (!grid_encodings.empty()) {
        full.grid.encodings.clear();
        for (const std::string& e : grid_encodings) {
          full.grid.encodings.push_back(qsc::encoding_from_string(e));
        }
      }
      if (!grid_scenarios.empty()) {
        full.grid.scenarios.clear();
        for (const std::string& s : grid_scenarios) {
          full.grid.scenarios.push_back(qsc::scenario_from_string(s));
        }
      }
      if (grid_repeats > 0) full.grid.repeats = grid_repeats;
      if (grid_jobs > 0) full.grid.jobs = grid_jobs;

      const qsc::GridResult result = qsc::run_grid(full.experiment, full.grid);
      int failures = 0;
      for (const qsc::GridCellResult& cell : result.cells) {
        if (cell.ok) {
          std::printf("cell %-28s accuracy %.4f\n", cell.run_name.c_str(), cell.accuracy);
        } else {
          ++failures;
          std::printf("cell %-28s FAILED: %s\n", cell.run_name.c_str(), cell.error.c_str());
        }
      }
      std::printf("summary: %s\n", result.summary_csv.c_str());
      return failures == 0 ? 0 : kExitRunError;
    }
    if (plot->parsed()) {
      for (const std::string& path : qsc::emit_plots(csv_paths, plot_dir)) {
        std::printf("wrote %s\n", path.c_str());
      }
      return 0;
    }
    if (fetch->parsed()) {
      qsc::tools::fetch_mnist(fetch_base, fetch_dir);
      return 0;
    }
  } catch (const qsc::Error& e) {
    std::fprintf(stderr, "qsc: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qsc: %s\n", e.what());
    return kExitRunError;
  }
  return 0;
}
