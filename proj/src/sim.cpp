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

#include "qsc/sim.hpp"

#include <algorithm>
#include <cmath>

#include "qsc/errors.hpp"

namespace qsc {

const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::CRY: return "CRY";
    case GateKind::CSWAP: return "CSWAP";
    case GateKind::Idle: return "IDLE";
  }
  return "?";
}

int GateOp::arity() const {
  switch (kind) {
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::CRY:
      return 2;
    case GateKind::CSWAP:
      return 3;
    default:
      return 1;
  }
}

namespace {

void check_gate_qubits(const GateOp& op, int num_qubits) {
  const int n = op.arity();
  for (int i = 0; i < n; ++i) {
    const int q = op.qubits[static_cast<std::size_t>(i)];
    if (q < 0 || q >= num_qubits) {
      throw Error(ErrorCategory::Dimension,
                  std::string(to_string(op.kind)) + " qubit index " + std::to_string(q) +
                      " out of range for " + std::to_string(num_qubits) + " qubits");
    }
    for (int j = 0; j < i; ++j) {
      if (op.qubits[static_cast<std::size_t>(j)] == q) {
        throw Error(ErrorCategory::Dimension,
                    std::string(to_string(op.kind)) + " has repeated qubit index " +
                        std::to_string(q));
      }
    }
  }
  if (op.kind == GateKind::Idle && op.duration < 0.0) {
    throw Error(ErrorCategory::Dimension, "IDLE duration must be nonnegative");
  }
}

}  // namespace

void Circuit::push(const GateOp& op) {
  check_gate_qubits(op, num_qubits);
  ops.push_back(op);
}

void Circuit::append(const Circuit& fragment) {
  if (fragment.num_qubits > num_qubits) {
    throw Error(ErrorCategory::Dimension,
                "fragment spans " + std::to_string(fragment.num_qubits) +
                    " qubits, circuit has " + std::to_string(num_qubits));
  }
  for (const GateOp& op : fragment.ops) push(op);
}

StateVector::StateVector(int nq, std::vector<cdouble> amps)
    : num_qubits(nq), amplitudes(std::move(amps)) {
  if (amplitudes.size() != (std::size_t{1} << nq)) {
    throw Error(ErrorCategory::Dimension, "amplitude count must be 2^num_qubits");
  }
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const cdouble& a : amplitudes) s += std::norm(a);
  return s;
}

DensityMatrix::DensityMatrix(int nq)
    : num_qubits(nq), entries(std::size_t{1} << (2 * nq), cdouble{0.0, 0.0}) {}

double DensityMatrix::trace_real() const {
  const std::size_t d = dim();
  double t = 0.0;
  for (std::size_t i = 0; i < d; ++i) t += at(i, i).real();
  return t;
}

StateVector zero_state(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw Error(ErrorCategory::Config,
                "num_qubits must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                    std::to_string(num_qubits));
  }
  StateVector s;
  s.num_qubits = num_qubits;
  s.amplitudes.assign(std::size_t{1} << num_qubits, cdouble{0.0, 0.0});
  s.amplitudes[0] = cdouble{1.0, 0.0};
  return s;
}

Mat2 gate_matrix_1q(GateKind kind, double theta) {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  switch (kind) {
    case GateKind::H:
      return {cdouble{kInvSqrt2, 0}, cdouble{kInvSqrt2, 0}, cdouble{kInvSqrt2, 0},
              cdouble{-kInvSqrt2, 0}};
    case GateKind::X:
      return {cdouble{0, 0}, cdouble{1, 0}, cdouble{1, 0}, cdouble{0, 0}};
    case GateKind::Y:
      return {cdouble{0, 0}, cdouble{0, -1}, cdouble{0, 1}, cdouble{0, 0}};
    case GateKind::Z:
      return {cdouble{1, 0}, cdouble{0, 0}, cdouble{0, 0}, cdouble{-1, 0}};
    case GateKind::RX:
      return {cdouble{c, 0}, cdouble{0, -s}, cdouble{0, -s}, cdouble{c, 0}};
    case GateKind::RY:
      return {cdouble{c, 0}, cdouble{-s, 0}, cdouble{s, 0}, cdouble{c, 0}};
    case GateKind::RZ:
      return {std::exp(cdouble{0, -theta / 2.0}), cdouble{0, 0}, cdouble{0, 0},
              std::exp(cdouble{0, theta / 2.0})};
    default:
      throw Error(ErrorCategory::Internal,
                  std::string("no 1-qubit matrix for ") + to_string(kind));
  }
}

namespace detail {

void apply_1q(std::vector<cdouble>& v, int total_qubits, int qubit, const Mat2& m) {
  const std::size_t n = std::size_t{1} << total_qubits;
  const std::size_t mask = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < n; ++i) {
    if (i & mask) continue;
    const cdouble a = v[i];
    const cdouble b = v[i | mask];
    v[i] = m[0] * a + m[1] * b;
    v[i | mask] = m[2] * a + m[3] * b;
  }
}

void apply_ctrl_1q(std::vector<cdouble>& v, int total_qubits, int control, int target,
                   const Mat2& m) {
  const std::size_t n = std::size_t{1} << total_qubits;
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(i & cmask) || (i & tmask)) continue;
    const cdouble a = v[i];
    const cdouble b = v[i | tmask];
    v[i] = m[0] * a + m[1] * b;
    v[i | tmask] = m[2] * a + m[3] * b;
  }
}

void apply_cswap(std::vector<cdouble>& v, int total_qubits, int control, int a, int b) {
  const std::size_t n = std::size_t{1} << total_qubits;
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t amask = std::size_t{1} << a;
  const std::size_t bmask = std::size_t{1} << b;
  for (std::size_t i = 0; i < n; ++i) {
    // visit each swapped pair once, from the (a=1, b=0) side
    if ((i & cmask) && (i & amask) && !(i & bmask)) {
      const std::size_t j = (i & ~amask) | bmask;
      std::swap(v[i], v[j]);
    }
  }
}

void apply_op_vec(std::vector<cdouble>& v, int total_qubits, const GateOp& op, int offset,
                  bool conjugate) {
  const auto maybe_conj = [conjugate](Mat2 m) {
    if (conjugate) {
      for (cdouble& e : m) e = std::conj(e);
    }
    return m;
  };
  const int q0 = op.qubits[0] + offset;
  switch (op.kind) {
    case GateKind::Idle:
      return;  // no-op in unitary evolution
    case GateKind::CNOT:
      apply_ctrl_1q(v, total_qubits, q0, op.qubits[1] + offset,
                    maybe_conj(gate_matrix_1q(GateKind::X)));
      return;
    case GateKind::CZ:
      apply_ctrl_1q(v, total_qubits, q0, op.qubits[1] + offset,
                    maybe_conj(gate_matrix_1q(GateKind::Z)));
      return;
    case GateKind::CRY:
      apply_ctrl_1q(v, total_qubits, q0, op.qubits[1] + offset,
                    maybe_conj(gate_matrix_1q(GateKind::RY, op.theta)));
      return;
    case GateKind::CSWAP:
      apply_cswap(v, total_qubits, q0, op.qubits[1] + offset, op.qubits[2] + offset);
      return;
    default:
      apply_1q(v, total_qubits, q0, maybe_conj(gate_matrix_1q(op.kind, op.theta)));
      return;
  }
}

}  // namespace detail

void apply_gate_inplace(StateVector& state, const GateOp& gate) {
  check_gate_qubits(gate, state.num_qubits);
  detail::apply_op_vec(state.amplitudes, state.num_qubits, gate, 0, false);
}

StateVector apply_gate(const StateVector& state, const GateOp& gate) {
  StateVector out = state;
  apply_gate_inplace(out, gate);
  return out;
}

StateVector run_circuit(const Circuit& circuit, StateVector initial) {
  if (initial.num_qubits != circuit.num_qubits) {
    throw Error(ErrorCategory::Dimension, "initial state does not match circuit width");
  }
  for (const GateOp& op : circuit.ops) apply_gate_inplace(initial, op);
  return initial;
}

StateVector run_circuit(const Circuit& circuit) {
  return run_circuit(circuit, zero_state(circuit.num_qubits));
}

namespace {

void check_measure_args(int num_qubits, int qubit, int outcome) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw Error(ErrorCategory::Dimension,
                "measured qubit " + std::to_string(qubit) + " out of range");
  }
  if (outcome != 0 && outcome != 1) {
    throw Error(ErrorCategory::Dimension, "outcome must be 0 or 1");
  }
}

}  // namespace

double measure_probability(const StateVector& state, int qubit, int outcome) {
  check_measure_args(state.num_qubits, qubit, outcome);
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t want = outcome ? mask : 0;
  double p = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if ((i & mask) == want) p += std::norm(state.amplitudes[i]);
  }
  return p;
}

cdouble inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits != b.num_qubits) {
    throw Error(ErrorCategory::Dimension, "inner product of states with different widths");
  }
  cdouble s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return s;
}

DensityMatrix to_density(const StateVector& state) {
  DensityMatrix rho(state.num_qubits);
  const std::size_t d = rho.dim();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      rho.at(i, j) = state.amplitudes[i] * std::conj(state.amplitudes[j]);
    }
  }
  return rho;
}

void apply_gate_inplace(DensityMatrix& rho, const GateOp& gate) {
  check_gate_qubits(gate, rho.num_qubits);
  const int n = rho.num_qubits;
  // rho -> U rho U^dag: rows live on qubits [n, 2n), columns on [0, n).
  detail::apply_op_vec(rho.entries, 2 * n, gate, n, false);
  detail::apply_op_vec(rho.entries, 2 * n, gate, 0, true);
}

DensityMatrix apply_gate(const DensityMatrix& rho, const GateOp& gate) {
  DensityMatrix out = rho;
  apply_gate_inplace(out, gate);
  return out;
}

double measure_probability(const DensityMatrix& rho, int qubit, int outcome) {
  check_measure_args(rho.num_qubits, qubit, outcome);
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t want = outcome ? mask : 0;
  double p = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    if ((i & mask) == want) p += rho.at(i, i).real();
  }
  return p;
}

std::vector<cdouble> gate_unitary(const GateOp& op) {
  const int k = op.arity();
  const std::size_t d = std::size_t{1} << k;
  // Remap the gate onto local qubits 0..k-1 in list order.
  GateOp local = op;
  for (int i = 0; i < k; ++i) local.qubits[static_cast<std::size_t>(i)] = i;
  std::vector<cdouble> u(d * d, cdouble{0.0, 0.0});
  for (std::size_t col = 0; col < d; ++col) {
    std::vector<cdouble> v(d, cdouble{0.0, 0.0});
    v[col] = cdouble{1.0, 0.0};
    detail::apply_op_vec(v, k, local, 0, false);
    for (std::size_t row = 0; row < d; ++row) u[row * d + col] = v[row];
  }
  return u;
}

Circuit with_idle_markers(const Circuit& circuit) {
  Circuit out(circuit.num_qubits);
  std::vector<int> last_moment(static_cast<std::size_t>(circuit.num_qubits), -1);
  std::vector<bool> has_prior(static_cast<std::size_t>(circuit.num_qubits), false);
  for (const GateOp& op : circuit.ops) {
    if (op.kind == GateKind::Idle) {
      out.push(op);
      continue;
    }
    const int k = op.arity();
    int moment = 0;
    for (int i = 0; i < k; ++i) {
      moment = std::max(moment, last_moment[static_cast<std::size_t>(op.qubits[i])] + 1);
    }
    for (int i = 0; i < k; ++i) {
      const int q = op.qubits[static_cast<std::size_t>(i)];
      if (has_prior[static_cast<std::size_t>(q)]) {
        const int gap = moment - last_moment[static_cast<std::size_t>(q)] - 1;
        if (gap > 0) out.push(GateOp::idle(q, static_cast<double>(gap)));
      }
    }
    for (int i = 0; i < k; ++i) {
      const int q = op.qubits[static_cast<std::size_t>(i)];
      last_moment[static_cast<std::size_t>(q)] = moment;
      has_prior[static_cast<std::size_t>(q)] = true;
    }
    out.push(op);
  }
  return out;
}

}  // namespace qsc
