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

#include <string>
#include <utility>
#include <vector>

#include "qsc/encoders.hpp"
#include "qsc/noise.hpp"
#include "qsc/sim.hpp"

namespace qsc {

// 5-qubit layout: qubit 0 ancilla, qubits 1-2 learning register, qubits 3-4
// data register; CSWAPs pair 1<->3 and 2<->4.
inline constexpr int kAncillaQubit = 0;
inline constexpr int kLearnQubitA = 1;
inline constexpr int kLearnQubitB = 2;
inline constexpr int kDataQubitA = 3;
inline constexpr int kDataQubitB = 4;

enum class LayerKind { SingleQubitUnitary, DualQubitUnitary, Entanglement };
enum class Entangler { CZ, CNOT, CRY };

struct LayerSpec {
  LayerKind kind = LayerKind::SingleQubitUnitary;
  Entangler entangler = Entangler::CZ;  // Entanglement layers only

  // SingleQubitUnitary: RY+RZ per learning qubit -> 4.
  // DualQubitUnitary: one RY angle and one RZ angle shared by both -> 2.
  // Entanglement: CZ/CNOT 0, CRY 1.
  int param_count() const;

  std::string token() const;
  static LayerSpec from_token(const std::string& token);
};

struct ClassModel {
  int label = 0;  // class digit, e.g. 3 or 6
  std::vector<LayerSpec> layers;
  std::vector<double> params;  // radians, kept unwrapped so gradients stay smooth

  int param_count() const;
  void validate() const;  // throws model error on parameter-count mismatch

  // [DualQubitUnitary, Entanglement(CZ), SingleQubitUnitary] -> 6 parameters.
  static std::vector<LayerSpec> default_stack();
  static ClassModel with_stack(int label, std::vector<LayerSpec> layers);
};

// One emitted learning-layer gate together with the index of the parameter it
// consumes (-1 for fixed gates). Dual layers emit two gates per parameter.
struct ParamGate {
  GateOp op;
  int param_index = -1;
};

std::vector<ParamGate> learning_gates(const ClassModel& model, int qubit_a, int qubit_b);

// H(0) + learning layers on 1-2 + encoder fragment on 3-4 + CSWAP(0;1,3),
// CSWAP(0;2,4) + H(0).
Circuit build_classifier_circuit(const ClassModel& model, const EncodedInput& input);

struct Backend {
  enum class Kind { Pure, Noisy };
  Kind kind = Kind::Pure;
  NoiseConfig noise;  // Noisy only
  DDPolicy dd;        // applied when dd.enabled

  static Backend pure() { return Backend{}; }
  static Backend noisy(NoiseConfig config, DDPolicy policy = DDPolicy{});
};

struct SwapTestResult {
  double p0 = 1.0;        // ancilla P(outcome 0)
  double fidelity = 1.0;  // max(0, 2 p0 - 1)
};

SwapTestResult swap_test(const ClassModel& model, const EncodedInput& input,
                         const Backend& backend);

// p_i = f_i / (f3 + f6); (0.5, 0.5) when both fidelities vanish.
std::pair<double, double> class_probabilities(double f3, double f6);

// Label of the larger fidelity; |f3 - f6| < 1e-12 counts as a tie and goes to
// model3's label.
int predict(const EncodedInput& input, const ClassModel& model3, const ClassModel& model6,
            const Backend& backend);

// Plain-text checkpoint: label, layer stack, parameters at full precision.
void save_checkpoint(const ClassModel& model, const std::string& path);
ClassModel load_checkpoint(const std::string& path);

}  // namespace qsc
