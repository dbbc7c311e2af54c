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
#include <vector>

#include "qsc/sim.hpp"

namespace qsc {

// Parametric noise model. Depolarizing probabilities apply per gate on the
// touched qubits; damping/dephasing/coherent-Z apply per idle unit on idle
// windows. `readout_flip` is a classical bit-flip mixture applied to the
// ancilla probability at measurement time, not a Kraus channel.
struct NoiseConfig {
  double p_depol_1q = 0.0;
  double p_depol_2q = 0.0;  // 2- and 3-qubit gates
  double gamma_amp = 0.0;
  double gamma_phase = 0.0;
  double coherent_z_rate = 0.0;  // radians per idle unit
  double readout_flip = 0.0;

  bool is_zero() const {
    return p_depol_1q == 0.0 && p_depol_2q == 0.0 && gamma_amp == 0.0 &&
           gamma_phase == 0.0 && coherent_z_rate == 0.0;
  }
  void validate() const;
};

// Named presets standing in for hardware scenarios. The magnitudes are
// artifact configuration tuned for the qualitative pure/noisy/DD ordering,
// not calibration data of any device.
NoiseConfig noise_preset(const std::string& name);
std::vector<std::string> noise_preset_names();

struct DDPolicy {
  bool enabled = false;
  std::vector<GateKind> sequence = {GateKind::X, GateKind::X};
  double min_idle_duration = 1.0;

  // Throws policy error unless the sequence composes to identity up to a
  // global phase.
  void validate() const;
};

struct KrausFactor {
  int qubit;
  Mat2 m;
};

// K = scale * tensor-product of 1-qubit factors (identity on other qubits).
struct KrausOp {
  cdouble scale{1.0, 0.0};
  std::vector<KrausFactor> factors;
};

struct KrausSet {
  std::vector<KrausOp> ops;
  bool is_identity() const;
};

// Channel attached to one gate: depolarizing on the touched qubits for
// unitary gates, damping + dephasing + coherent Z scaled by duration for
// Idle markers. Always satisfies sum K^dag K = I.
KrausSet kraus_for(const NoiseConfig& config, const GateOp& gate);

void apply_channel_inplace(DensityMatrix& rho, const KrausSet& channel);

// Density-matrix evolution: unitary then its channel per op; Idle ops apply
// only their channel.
DensityMatrix run_noisy(const Circuit& circuit, const NoiseConfig& config);

// Replaces each Idle of duration d >= min_idle_duration with the policy's
// pulse train: [IDLE(d/k), G1, ..., IDLE(d/k), Gk]. Total idle duration is
// preserved; with zero noise the circuit is unchanged observably.
Circuit insert_dd(const Circuit& circuit, const DDPolicy& policy);

// Classical readout bit flip on a probability.
inline double apply_readout_flip(double p, double flip) {
  return (1.0 - flip) * p + flip * (1.0 - p);
}

}  // namespace qsc
