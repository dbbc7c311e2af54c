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

#include "qsc/train.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "qsc/errors.hpp"

namespace qsc {

GradientMethod gradient_method_from_string(const std::string& name) {
  if (name == "parameter_shift") return GradientMethod::ParameterShift;
  if (name == "finite_difference") return GradientMethod::FiniteDifference;
  throw Error(ErrorCategory::Config, "unknown gradient method '" + name + "'");
}

const char* to_string(GradientMethod m) {
  return m == GradientMethod::ParameterShift ? "parameter_shift" : "finite_difference";
}

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCategory::Config, "learning_rate must be a nonnegative finite number");
  }
  if (epochs_per_class < 1) {
    throw Error(ErrorCategory::Config, "epochs_per_class must be >= 1");
  }
  if (batch_size < 1) {
    throw Error(ErrorCategory::Config, "batch_size must be >= 1");
  }
}

double bce_loss(int y, double p) {
  if (y != 0 && y != 1) {
    throw Error(ErrorCategory::Metrics, "BCE label must be 0 or 1");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCategory::Metrics, "BCE probability must be in [0, 1]");
  }
  const double q = std::min(1.0 - 1e-12, std::max(1e-12, p));
  return -(y * std::log(q) + (1 - y) * std::log(1.0 - q));
}

double entropy(std::span<const double> p) {
  double sum = 0.0;
  for (const double v : p) {
    if (v < 0.0) throw Error(ErrorCategory::Metrics, "probabilities must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCategory::Metrics, "probabilities must sum to 1");
  }
  double h = 0.0;
  for (const double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double accuracy(std::span<const int> predictions, std::span<const int> truths) {
  if (predictions.empty()) {
    throw Error(ErrorCategory::Metrics, "accuracy over an empty set");
  }
  if (predictions.size() != truths.size()) {
    throw Error(ErrorCategory::Metrics, "prediction/truth length mismatch");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i] == truths[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

namespace {

// Unclipped swap-test fidelity 2 p0 - 1 on the pure backend; exact simulation
// keeps p0 >= 0.5 so the clip in SwapTestResult would be a no-op anyway.
double pure_fidelity(const std::vector<ParamGate>& gates, const EncodedInput& input) {
  Circuit c(5);
  c.push(GateOp::h(kAncillaQubit));
  for (const ParamGate& g : gates) c.push(g.op);
  c.append(encode_fragment(input, kDataQubitA, kDataQubitB));
  c.push(GateOp::cswap(kAncillaQubit, kLearnQubitA, kDataQubitA));
  c.push(GateOp::cswap(kAncillaQubit, kLearnQubitB, kDataQubitB));
  c.push(GateOp::h(kAncillaQubit));
  return 2.0 * measure_probability(run_circuit(c), kAncillaQubit, 0) - 1.0;
}

double shifted_fidelity(std::vector<ParamGate> gates, std::size_t gate_index, double delta,
                        const EncodedInput& input) {
  gates[gate_index].op.theta += delta;
  return pure_fidelity(gates, input);
}

constexpr double kPi = 3.14159265358979323846;
// Four-term shift coefficients for controlled rotations (generator
// eigenvalue gaps 1/2 and 1).
constexpr double kCtrlShiftPlus = 0.42677669529663687;   // (sqrt(2)+1) / (4 sqrt(2))
constexpr double kCtrlShiftMinus = 0.07322330470336313;  // (sqrt(2)-1) / (4 sqrt(2))

}  // namespace

double fidelity_gradient(const ClassModel& model, const EncodedInput& input, int param_index,
                         GradientMethod method) {
  model.validate();
  if (param_index < 0 || param_index >= model.param_count()) {
    throw Error(ErrorCategory::Model, "parameter index out of range");
  }
  if (method == GradientMethod::FiniteDifference) {
    const double h = 1e-5;
    ClassModel plus = model;
    ClassModel minus = model;
    plus.params[static_cast<std::size_t>(param_index)] += h;
    minus.params[static_cast<std::size_t>(param_index)] -= h;
    const double fp = pure_fidelity(learning_gates(plus, kLearnQubitA, kLearnQubitB), input);
    const double fm = pure_fidelity(learning_gates(minus, kLearnQubitA, kLearnQubitB), input);
    return (fp - fm) / (2.0 * h);
  }
  const auto gates = learning_gates(model, kLearnQubitA, kLearnQubitB);
  double grad = 0.0;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (gates[i].param_index != param_index) continue;
    if (gates[i].op.kind == GateKind::CRY) {
      const double a = shifted_fidelity(gates, i, kPi / 2.0, input) -
                       shifted_fidelity(gates, i, -kPi / 2.0, input);
      const double b = shifted_fidelity(gates, i, 3.0 * kPi / 2.0, input) -
                       shifted_fidelity(gates, i, -3.0 * kPi / 2.0, input);
      grad += kCtrlShiftPlus * a - kCtrlShiftMinus * b;
    } else {
      grad += (shifted_fidelity(gates, i, kPi / 2.0, input) -
               shifted_fidelity(gates, i, -kPi / 2.0, input)) /
              2.0;
    }
  }
  return grad;
}

std::vector<double> fidelity_gradient_all(const ClassModel& model, const EncodedInput& input,
                                          GradientMethod method) {
  std::vector<double> g(static_cast<std::size_t>(model.param_count()));
  for (int k = 0; k < model.param_count(); ++k) {
    g[static_cast<std::size_t>(k)] = fidelity_gradient(model, input, k, method);
  }
  return g;
}

double mean_fidelity(const ClassModel& model, const std::vector<EncodedInput>& samples,
                     const Backend& backend) {
  if (samples.empty()) throw Error(ErrorCategory::Metrics, "mean fidelity over an empty set");
  double sum = 0.0;
  for (const EncodedInput& s : samples) sum += swap_test(model, s, backend).fidelity;
  return sum / static_cast<double>(samples.size());
}

std::vector<MetricsRecord> train_class(ClassModel& model,
                                       const std::vector<EncodedInput>& samples,
                                       const TrainConfig& cfg, Rng& rng,
                                       const EpochCallback* on_epoch, int epoch_offset) {
  cfg.validate();
  model.validate();
  if (samples.empty()) {
    throw Error(ErrorCategory::Data, "training set for class " + std::to_string(model.label) +
                                         " is empty");
  }
  const int n_params = model.param_count();
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> grad(static_cast<std::size_t>(n_params));
  std::vector<MetricsRecord> records;

  for (int epoch = 1; epoch <= cfg.epochs_per_class; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    rng.shuffle(order);
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t s = start; s < end; ++s) {
        const EncodedInput& sample = samples[order[s]];
        for (int k = 0; k < n_params; ++k) {
          grad[static_cast<std::size_t>(k)] +=
              fidelity_gradient(model, sample, k, cfg.gradient_method);
        }
      }
      const double inv = 1.0 / static_cast<double>(end - start);
      for (int k = 0; k < n_params; ++k) {
        model.params[static_cast<std::size_t>(k)] +=
            cfg.learning_rate * grad[static_cast<std::size_t>(k)] * inv;
      }
    }
    if (on_epoch != nullptr) {
      MetricsRecord rec = (*on_epoch)(epoch);
      rec.epoch = epoch_offset + epoch;
      rec.class_phase = model.label;
      rec.wall_time_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      records.push_back(rec);
    }
  }
  return records;
}

MetricsRecord evaluate(const ClassModel& model3, const ClassModel& model6,
                       const std::vector<EncodedInput>& inputs, const std::vector<int>& labels,
                       const Backend& backend) {
  if (inputs.empty()) throw Error(ErrorCategory::Metrics, "evaluation over an empty test set");
  if (inputs.size() != labels.size()) {
    throw Error(ErrorCategory::Metrics, "test inputs/labels length mismatch");
  }
  MetricsRecord rec;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const double f3 = swap_test(model3, inputs[i], backend).fidelity;
    const double f6 = swap_test(model6, inputs[i], backend).fidelity;
    const auto [p3, p6] = class_probabilities(f3, f6);
    // same tie rule as predict()
    const int pred = (std::abs(f3 - f6) < 1e-12 || f3 > f6) ? model3.label : model6.label;
    if (pred == labels[i]) ++hits;
    const int y = labels[i] == model3.label ? 1 : 0;
    rec.loss += bce_loss(y, p3);
    const std::array<double, 2> dist{p3, p6};
    rec.entropy += entropy(dist);
  }
  const double inv = 1.0 / static_cast<double>(inputs.size());
  rec.accuracy = static_cast<double>(hits) * inv;
  rec.loss *= inv;
  rec.entropy *= inv;
  return rec;
}

void write_metrics_csv(const std::string& path, const std::vector<MetricsRecord>& records,
                       bool include_timing) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCategory::Data, "cannot open metrics file '" + path + "'");
  out << "epoch,class_phase,accuracy,loss,entropy,wall_time_s\n";
  char buf[160];
  for (const MetricsRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.6f,%.6f,%.6f,%.3f\n", r.epoch, r.class_phase,
                  r.accuracy, r.loss, r.entropy, include_timing ? r.wall_time_s : 0.0);
    out << buf;
  }
  if (!out) throw Error(ErrorCategory::Data, "failed writing metrics file '" + path + "'");
}

}  // namespace qsc
