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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsc/data.hpp"
#include "qsc/train.hpp"

namespace qsc {

enum class Scenario { PureSim, NoisySim, NoisySimDD };

const char* to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

struct DataOptions {
  std::string dir;  // directory holding the IDX pair; ignored when synthetic
  std::string images_file = "images-idx3-ubyte";
  std::string labels_file = "labels-idx1-ubyte";
  bool synthetic = false;
  int synthetic_n = 1400;
  std::uint64_t synthetic_seed = 7;
  int n_train = 1000;
  int n_test = 187;
  int pca_pool_other = 2000;
};

struct OutputOptions {
  std::string dir = "out";
  bool timing = false;  // real wall times in the CSV break byte-determinism
};

struct ExperimentConfig {
  EncodingMethod encoding = EncodingMethod::Rotation;
  Scenario scenario = Scenario::PureSim;
  std::string noise_preset = "torino_like";
  std::map<std::string, double> noise_overrides;  // field name -> value
  DDPolicy dd;  // enabled is derived from the scenario
  std::vector<LayerSpec> layers = ClassModel::default_stack();
  TrainConfig train;
  DataOptions data;
  OutputOptions output;
  std::uint64_t seed = 42;
  double rotation_range = 3.14159265358979323846;
  std::string run_name;  // empty -> "<encoding>_<scenario>_seed<N>"

  std::string effective_run_name() const;
};

struct GridOptions {
  std::vector<EncodingMethod> encodings = {EncodingMethod::Basis, EncodingMethod::Rotation,
                                           EncodingMethod::Amplitude};
  std::vector<Scenario> scenarios = {Scenario::PureSim, Scenario::NoisySim,
                                     Scenario::NoisySimDD};
  int repeats = 1;
  int jobs = 1;
};

struct FullConfig {
  ExperimentConfig experiment;
  GridOptions grid;
};

// TOML-style config file: [section] headers, key = value lines, # comments.
// Unknown keys are config errors so typos cannot silently change a run.
FullConfig load_config(const std::string& path);

// Noise for the config's scenario: named preset overlaid with any explicit
// [noise] fields. Resolved lazily so pure runs never touch the preset table.
NoiseConfig resolve_noise(const ExperimentConfig& config);
Backend make_backend(const ExperimentConfig& config);

struct RunReport {
  std::string run_name;
  std::vector<MetricsRecord> records;
  double final_accuracy = 0.0;
  double total_wall_time_s = 0.0;
  std::string metrics_csv;
  std::string checkpoint3;
  std::string checkpoint6;
  std::string report_json;
};

// In-memory result of the training protocol, for callers that evaluate the
// trained models under additional backends (no files are written).
struct TrainedRun {
  ClassModel model3;
  ClassModel model6;
  std::vector<EncodedInput> test_inputs;
  std::vector<int> test_labels;
  std::vector<MetricsRecord> records;
};

// The full seeded protocol: load/synthesize data, split, fit PCA on the
// pool, encode, init both models from the seed, train the label-3 phase then
// the label-6 phase, evaluating after each epoch on the scenario's backend.
// `on_epoch_model` is called after each epoch with the model just updated
// (checkpointing hook); it may be null.
TrainedRun train_protocol(const ExperimentConfig& config,
                          const std::function<void(const ClassModel&)>* on_epoch_model = nullptr);

// Loads data, fits PCA, trains both class models (label-3 phase then
// label-6 phase), evaluates after every epoch on the scenario's backend, and
// writes metrics.csv + checkpoints + report.json under
// output.dir/run_name/.
RunReport run_experiment(const ExperimentConfig& config);

struct GridCellResult {
  EncodingMethod encoding;
  Scenario scenario;
  int repeat = 0;
  bool ok = false;
  double accuracy = 0.0;
  std::string error;
  std::string run_name;
};

struct GridResult {
  std::vector<GridCellResult> cells;
  std::string summary_csv;
};

// Runs every scenario x encoding cell (x repeats); cell seeds are
// seed + cell_index + 1000 * repeat. A failing cell is recorded in the
// summary and does not abort the others. jobs > 1 runs cells on threads;
// results are independent of the thread count.
GridResult run_grid(const ExperimentConfig& base, const GridOptions& options);

}  // namespace qsc
