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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qsc/model.hpp"
#include "qsc/rng.hpp"

namespace qsc {

enum class GradientMethod { ParameterShift, FiniteDifference };

GradientMethod gradient_method_from_string(const std::string& name);
const char* to_string(GradientMethod m);

struct TrainConfig {
  double learning_rate = 0.01;
  int epochs_per_class = 5;
  int batch_size = 1;
  GradientMethod gradient_method = GradientMethod::ParameterShift;
  std::uint64_t seed = 42;

  void validate() const;
};

struct MetricsRecord {
  int epoch = 0;        // global epoch number across both class phases
  int class_phase = 0;  // label of the class being trained when recorded
  double accuracy = 0.0;
  double loss = 0.0;
  double entropy = 0.0;
  double wall_time_s = 0.0;
};

// Binary cross-entropy; p is clamped to [1e-12, 1 - 1e-12] before the logs.
double bce_loss(int y, double p);

// Shannon entropy (natural log) of a normalized probability vector;
// 0 log 0 counts as 0.
double entropy(std::span<const double> p);

double accuracy(std::span<const int> predictions, std::span<const int> truths);

// d(fidelity)/d(parameter) of the swap test on the pure backend.
// ParameterShift sums exact shift rules over every gate occurrence consuming
// the parameter (two-term rule for RY/RZ, four-term rule for CRY);
// FiniteDifference is a central difference with step 1e-5.
double fidelity_gradient(const ClassModel& model, const EncodedInput& input, int param_index,
                         GradientMethod method);

// Full gradient; same semantics per component.
std::vector<double> fidelity_gradient_all(const ClassModel& model, const EncodedInput& input,
                                          GradientMethod method);

// Mean swap-test fidelity of the model against the samples.
double mean_fidelity(const ClassModel& model, const std::vector<EncodedInput>& samples,
                     const Backend& backend = Backend::pure());

// Called after each epoch; fills accuracy/loss/entropy of the record.
using EpochCallback = std::function<MetricsRecord(int epoch_in_phase)>;

// Gradient ascent on the mean swap-test fidelity of the class's own samples:
// per batch, params += learning_rate * mean-gradient. Batch order reshuffles
// each epoch from `rng`. Returns one record per epoch when a callback is
// given (epoch and wall_time_s are filled in here).
std::vector<MetricsRecord> train_class(ClassModel& model,
                                       const std::vector<EncodedInput>& samples,
                                       const TrainConfig& cfg, Rng& rng,
                                       const EpochCallback* on_epoch = nullptr,
                                       int epoch_offset = 0);

// Test-set metrics using both class models: accuracy over predictions, mean
// BCE with y = 1 for model3's class and p = p3, mean entropy of (p3, p6).
MetricsRecord evaluate(const ClassModel& model3, const ClassModel& model6,
                       const std::vector<EncodedInput>& inputs, const std::vector<int>& labels,
                       const Backend& backend);

// CSV schema: epoch,class_phase,accuracy,loss,entropy,wall_time_s.
// wall_time_s is written as 0.000 unless include_timing is set, keeping the
// default output byte-identical across runs.
void write_metrics_csv(const std::string& path, const std::vector<MetricsRecord>& records,
                       bool include_timing = false);

}  // namespace qsc
