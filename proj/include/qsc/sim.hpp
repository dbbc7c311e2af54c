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

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace qsc {

using cdouble = std::complex<double>;

inline constexpr int kMaxQubits = 12;

// Qubit index convention: qubit 0 is the least significant bit of the
// basis-state index, so |q1 q0> = |10> lives at index 2.

enum class GateKind {
  H,
  X,
  Y,
  Z,
  RX,
  RY,
  RZ,
  CNOT,
  CZ,
  CRY,
  CSWAP,
  Idle,
};

const char* to_string(GateKind k);

struct GateOp {
  GateKind kind = GateKind::Idle;
  std::array<int, 3> qubits{-1, -1, -1};
  double theta = 0.0;     // radians; RX/RY/RZ/CRY only
  double duration = 0.0;  // Idle only, arbitrary time units

  int arity() const;
  bool is_parametrized() const {
    return kind == GateKind::RX || kind == GateKind::RY ||
           kind == GateKind::RZ || kind == GateKind::CRY;
  }

  static GateOp h(int q) { return {GateKind::H, {q, -1, -1}}; }
  static GateOp x(int q) { return {GateKind::X, {q, -1, -1}}; }
  static GateOp y(int q) { return {GateKind::Y, {q, -1, -1}}; }
  static GateOp z(int q) { return {GateKind::Z, {q, -1, -1}}; }
  static GateOp rx(int q, double theta) { return {GateKind::RX, {q, -1, -1}, theta}; }
  static GateOp ry(int q, double theta) { return {GateKind::RY, {q, -1, -1}, theta}; }
  static GateOp rz(int q, double theta) { return {GateKind::RZ, {q, -1, -1}, theta}; }
  static GateOp cnot(int control, int target) { return {GateKind::CNOT, {control, target, -1}}; }
  static GateOp cz(int a, int b) { return {GateKind::CZ, {a, b, -1}}; }
  static GateOp cry(int control, int target, double theta) {
    return {GateKind::CRY, {control, target, -1}, theta};
  }
  static GateOp cswap(int control, int a, int b) { return {GateKind::CSWAP, {control, a, b}}; }
  static GateOp idle(int q, double duration) { return {GateKind::Idle, {q, -1, -1}, 0.0, duration}; }
};

struct Circuit {
  int num_qubits = 0;
  std::vector<GateOp> ops;

  Circuit() = default;
  explicit Circuit(int nq) : num_qubits(nq) {}

  // Validates qubit indices against num_qubits before appending.
  void push(const GateOp& op);
  void append(const Circuit& fragment);
};

struct StateVector {
  int num_qubits = 0;
  std::vector<cdouble> amplitudes;

  StateVector() = default;
  StateVector(int nq, std::vector<cdouble> amps);

  std::size_t dim() const { return amplitudes.size(); }
  double norm_sq() const;
};

struct DensityMatrix {
  int num_qubits = 0;
  std::vector<cdouble> entries;  // row-major, 2^n x 2^n

  DensityMatrix() = default;
  explicit DensityMatrix(int nq);

  std::size_t dim() const { return std::size_t{1} << num_qubits; }
  cdouble& at(std::size_t row, std::size_t col) { return entries[row * dim() + col]; }
  const cdouble& at(std::size_t row, std::size_t col) const { return entries[row * dim() + col]; }
  double trace_real() const;
};

// --- statevector path ---

StateVector zero_state(int num_qubits);

void apply_gate_inplace(StateVector& state, const GateOp& gate);
StateVector apply_gate(const StateVector& state, const GateOp& gate);

// Left-fold of apply_gate over the ops; Idle ops are no-ops here.
StateVector run_circuit(const Circuit& circuit, StateVector initial);
StateVector run_circuit(const Circuit& circuit);  // from |0...0>

double measure_probability(const StateVector& state, int qubit, int outcome);
cdouble inner_product(const StateVector& a, const StateVector& b);

// --- density-matrix path ---

DensityMatrix to_density(const StateVector& state);

void apply_gate_inplace(DensityMatrix& rho, const GateOp& gate);
DensityMatrix apply_gate(const DensityMatrix& rho, const GateOp& gate);

double measure_probability(const DensityMatrix& rho, int qubit, int outcome);

// --- small-matrix utilities ---

// Column-major-free 2x2: {m00, m01, m10, m11}.
using Mat2 = std::array<cdouble, 4>;

Mat2 gate_matrix_1q(GateKind kind, double theta = 0.0);

// Dense unitary of a gate over its touched qubits (dim 2^arity), row-major,
// with the gate's qubits mapped to local positions 0..arity-1 in list order.
std::vector<cdouble> gate_unitary(const GateOp& op);

// --- scheduling ---

// ASAP-schedules the ops into moments (every gate takes one moment) and
// inserts an Idle marker on each qubit gap between two of its gates, with
// duration equal to the number of skipped moments. Input must not already
// contain Idle ops on the scheduled qubits; existing Idles pass through.
Circuit with_idle_markers(const Circuit& circuit);

namespace detail {
// Generic kernels over a 2^total_qubits amplitude vector. The density path
// reuses them by treating the matrix as a 2n-qubit vector: rows are qubits
// [n, 2n), columns [0, n), and the column side takes conjugated matrices.
void apply_1q(std::vector<cdouble>& v, int total_qubits, int qubit, const Mat2& m);
void apply_ctrl_1q(std::vector<cdouble>& v, int total_qubits, int control, int target,
                   const Mat2& m);
void apply_cswap(std::vector<cdouble>& v, int total_qubits, int control, int a, int b);
// Applies `op` with all qubit indices shifted by `offset`; `conjugate`
// conjugates the matrix entries (used for the density column side).
void apply_op_vec(std::vector<cdouble>& v, int total_qubits, const GateOp& op, int offset,
                  bool conjugate);
}  // namespace detail

}  // namespace qsc
