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

#include "qsc/noise.hpp"

#include <cmath>

#include "qsc/errors.hpp"

namespace qsc {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCategory::Config, std::string(name) + " must be in [0, 1]");
  }
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 pauli(int which) {
  switch (which) {
    case 1: return gate_matrix_1q(GateKind::X);
    case 2: return gate_matrix_1q(GateKind::Y);
    case 3: return gate_matrix_1q(GateKind::Z);
    default: return {cdouble{1, 0}, cdouble{0, 0}, cdouble{0, 0}, cdouble{1, 0}};
  }
}

// k-qubit depolarizing with replacement probability p: at p = 1 the state of
// the touched qubits becomes maximally mixed.
KrausSet depolarizing(const std::vector<int>& qubits, double p) {
  KrausSet set;
  if (p == 0.0) {
    set.ops.push_back(KrausOp{});
    return set;
  }
  const int k = static_cast<int>(qubits.size());
  const std::size_t terms = std::size_t{1} << (2 * k);  // 4^k Pauli strings
  const double per_term = p / static_cast<double>(terms);
  KrausOp id;
  id.scale = cdouble{std::sqrt(1.0 - p + per_term), 0.0};
  set.ops.push_back(id);
  for (std::size_t t = 1; t < terms; ++t) {
    KrausOp op;
    op.scale = cdouble{std::sqrt(per_term), 0.0};
    std::size_t digits = t;
    for (int i = 0; i < k; ++i) {
      const int which = static_cast<int>(digits & 3);
      digits >>= 2;
      if (which != 0) op.factors.push_back({qubits[static_cast<std::size_t>(i)], pauli(which)});
    }
    set.ops.push_back(op);
  }
  return set;
}

// Idle channel of duration d: coherent RZ, then amplitude damping, then
// phase damping, composed into one Kraus set. Per-unit rates compound as
// 1 - (1 - gamma)^d.
KrausSet idle_channel(const NoiseConfig& cfg, int qubit, double duration) {
  const double g_amp = 1.0 - std::pow(1.0 - cfg.gamma_amp, duration);
  const double g_phase = 1.0 - std::pow(1.0 - cfg.gamma_phase, duration);
  const double phi = cfg.coherent_z_rate * duration;

  const Mat2 uz = gate_matrix_1q(GateKind::RZ, phi);
  std::vector<Mat2> amp = {{cdouble{1, 0}, cdouble{0, 0}, cdouble{0, 0},
                            cdouble{std::sqrt(1.0 - g_amp), 0}}};
  if (g_amp > 0.0) {
    amp.push_back({cdouble{0, 0}, cdouble{std::sqrt(g_amp), 0}, cdouble{0, 0}, cdouble{0, 0}});
  }
  std::vector<Mat2> phase = {{cdouble{1, 0}, cdouble{0, 0}, cdouble{0, 0},
                              cdouble{std::sqrt(1.0 - g_phase), 0}}};
  if (g_phase > 0.0) {
    phase.push_back({cdouble{0, 0}, cdouble{0, 0}, cdouble{0, 0}, cdouble{std::sqrt(g_phase), 0}});
  }

  KrausSet set;
  for (const Mat2& pd : phase) {
    for (const Mat2& ad : amp) {
      const Mat2 k = mat_mul(pd, mat_mul(ad, uz));
      KrausOp op;
      op.factors.push_back({qubit, k});
      set.ops.push_back(op);
    }
  }
  if (set.ops.size() == 1 && cfg.coherent_z_rate == 0.0 && g_amp == 0.0 && g_phase == 0.0) {
    // exact identity channel
    return KrausSet{{KrausOp{}}};
  }
  return set;
}

}  // namespace

void NoiseConfig::validate() const {
  check_probability(p_depol_1q, "p_depol_1q");
  check_probability(p_depol_2q, "p_depol_2q");
  check_probability(gamma_amp, "gamma_amp");
  check_probability(gamma_phase, "gamma_phase");
  check_probability(readout_flip, "readout_flip");
  if (!std::isfinite(coherent_z_rate)) {
    throw Error(ErrorCategory::Config, "coherent_z_rate must be finite");
  }
}

NoiseConfig noise_preset(const std::string& name) {
  if (name == "none") return NoiseConfig{};
  if (name == "torino_like") {
    NoiseConfig c;
    c.p_depol_1q = 0.001;
    c.p_depol_2q = 0.01;
    c.gamma_amp = 0.002;
    c.gamma_phase = 0.002;
    c.coherent_z_rate = 0.02;
    c.readout_flip = 0.01;
    return c;
  }
  if (name == "legacy_like") {
    NoiseConfig c;
    c.p_depol_1q = 0.01;
    c.p_depol_2q = 0.08;
    c.gamma_amp = 0.02;
    c.gamma_phase = 0.02;
    c.coherent_z_rate = 0.1;
    c.readout_flip = 0.03;
    return c;
  }
  if (name == "coherent_idle") {
    NoiseConfig c;
    c.coherent_z_rate = 0.35;
    return c;
  }
  throw Error(ErrorCategory::Config, "unknown noise preset '" + name + "'");
}

std::vector<std::string> noise_preset_names() {
  return {"none", "torino_like", "legacy_like", "coherent_idle"};
}

void DDPolicy::validate() const {
  if (sequence.empty()) {
    throw Error(ErrorCategory::Policy, "DD sequence must not be empty");
  }
  Mat2 prod = pauli(0);
  for (const GateKind k : sequence) {
    switch (k) {
      case GateKind::H:
      case GateKind::X:
      case GateKind::Y:
      case GateKind::Z:
        prod = mat_mul(gate_matrix_1q(k), prod);
        break;
      default:
        throw Error(ErrorCategory::Policy,
                    std::string("DD sequence supports fixed 1-qubit gates, got ") + to_string(k));
    }
  }
  const double off = std::abs(prod[1]) + std::abs(prod[2]);
  const double diag = std::abs(prod[0] - prod[3]);
  const double mag = std::abs(std::abs(prod[0]) - 1.0);
  if (off > 1e-12 || diag > 1e-12 || mag > 1e-12) {
    throw Error(ErrorCategory::Policy, "DD sequence does not compose to identity");
  }
  if (min_idle_duration < 0.0) {
    throw Error(ErrorCategory::Policy, "min_idle_duration must be nonnegative");
  }
}

bool KrausSet::is_identity() const {
  return ops.size() == 1 && ops[0].factors.empty() && ops[0].scale == cdouble{1.0, 0.0};
}

KrausSet kraus_for(const NoiseConfig& config, const GateOp& gate) {
  config.validate();
  if (gate.kind == GateKind::Idle) {
    return idle_channel(config, gate.qubits[0], gate.duration);
  }
  std::vector<int> qubits;
  for (int i = 0; i < gate.arity(); ++i) qubits.push_back(gate.qubits[static_cast<std::size_t>(i)]);
  const double p = qubits.size() == 1 ? config.p_depol_1q : config.p_depol_2q;
  return depolarizing(qubits, p);
}

void apply_channel_inplace(DensityMatrix& rho, const KrausSet& channel) {
  if (channel.is_identity()) return;
  const int n = rho.num_qubits;
  std::vector<cdouble> acc(rho.entries.size(), cdouble{0.0, 0.0});
  std::vector<cdouble> tmp;
  for (const KrausOp& op : channel.ops) {
    const double weight = std::norm(op.scale);
    if (weight == 0.0) continue;
    tmp = rho.entries;
    for (const KrausFactor& f : op.factors) {
      detail::apply_1q(tmp, 2 * n, f.qubit + n, f.m);
      Mat2 conj_m = f.m;
      for (cdouble& e : conj_m) e = std::conj(e);
      detail::apply_1q(tmp, 2 * n, f.qubit, conj_m);
    }
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += weight * tmp[i];
  }
  rho.entries = std::move(acc);
}

DensityMatrix run_noisy(const Circuit& circuit, const NoiseConfig& config) {
  config.validate();
  DensityMatrix rho = to_density(zero_state(circuit.num_qubits));
  for (const GateOp& op : circuit.ops) {
    if (op.kind != GateKind::Idle) apply_gate_inplace(rho, op);
    apply_channel_inplace(rho, kraus_for(config, op));
  }
  return rho;
}

Circuit insert_dd(const Circuit& circuit, const DDPolicy& policy) {
  if (!policy.enabled) return circuit;
  policy.validate();
  Circuit out(circuit.num_qubits);
  const double k = static_cast<double>(policy.sequence.size());
  for (const GateOp& op : circuit.ops) {
    if (op.kind != GateKind::Idle || op.duration < policy.min_idle_duration) {
      out.push(op);
      continue;
    }
    const double slice = op.duration / k;
    for (const GateKind pulse : policy.sequence) {
      out.push(GateOp::idle(op.qubits[0], slice));
      out.push(GateOp{pulse, {op.qubits[0], -1, -1}});
    }
  }
  return out;
}

}  // namespace qsc
