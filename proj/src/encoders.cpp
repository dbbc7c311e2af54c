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

#include "qsc/encoders.hpp"

#include <cmath>

#include "qsc/errors.hpp"

namespace qsc {

const char* to_string(EncodingMethod m) {
  switch (m) {
    case EncodingMethod::Basis: return "basis";
    case EncodingMethod::Rotation: return "rotation";
    case EncodingMethod::Amplitude: return "amplitude";
  }
  return "?";
}

EncodingMethod encoding_from_string(const std::string& name) {
  if (name == "basis") return EncodingMethod::Basis;
  if (name == "rotation") return EncodingMethod::Rotation;
  if (name == "amplitude") return EncodingMethod::Amplitude;
  throw Error(ErrorCategory::Config, "unknown encoding '" + name + "'");
}

namespace {

std::array<double, 4> take4(std::span<const double> v, const char* what) {
  if (v.size() != 4) {
    throw Error(ErrorCategory::Encoding,
                std::string(what) + " wants exactly 4 values, got " + std::to_string(v.size()));
  }
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace

EncodedInput EncodedInput::basis(int value) {
  if (value < 0 || value > 3) {
    throw Error(ErrorCategory::Encoding,
                "basis value " + std::to_string(value) + " outside [0, 3]");
  }
  EncodedInput in;
  in.method = EncodingMethod::Basis;
  in.basis_value = value;
  return in;
}

EncodedInput EncodedInput::rotation(std::span<const double> angles) {
  EncodedInput in;
  in.method = EncodingMethod::Rotation;
  in.values = take4(angles, "rotation encoding");
  return in;
}

EncodedInput EncodedInput::amplitude(std::span<const double> x) {
  EncodedInput in;
  in.method = EncodingMethod::Amplitude;
  in.values = take4(x, "amplitude encoding");
  return in;
}

Circuit basis_encode(int value, int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw Error(ErrorCategory::Encoding, "basis_encode num_qubits out of range");
  }
  if (value < 0 || value >= (1 << num_qubits)) {
    throw Error(ErrorCategory::Encoding,
                "value " + std::to_string(value) + " does not fit in " +
                    std::to_string(num_qubits) + " qubits");
  }
  Circuit frag(num_qubits);
  for (int q = 0; q < num_qubits; ++q) {
    if ((value >> q) & 1) frag.push(GateOp::x(q));
  }
  return frag;
}

Circuit rotation_encode(std::span<const double> angles, int qubit_a, int qubit_b) {
  const auto a = take4(angles, "rotation encoding");
  Circuit frag(std::max(qubit_a, qubit_b) + 1);
  frag.push(GateOp::ry(qubit_a, a[0]));
  frag.push(GateOp::rz(qubit_a, a[1]));
  frag.push(GateOp::ry(qubit_b, a[2]));
  frag.push(GateOp::rz(qubit_b, a[3]));
  return frag;
}

Circuit amplitude_encode(std::span<const double> x, int qubit_a, int qubit_b) {
  const auto v = take4(x, "amplitude encoding");
  const double norm_sq = v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
  const double norm = std::sqrt(norm_sq);
  if (norm <= 1e-12) {
    throw Error(ErrorCategory::Encoding, "cannot amplitude-encode a zero vector");
  }
  std::array<double, 4> y{v[0] / norm, v[1] / norm, v[2] / norm, v[3] / norm};
  std::array<double, 4> m{std::abs(y[0]), std::abs(y[1]), std::abs(y[2]), std::abs(y[3])};

  // Index bit 0 lives on q_a, bit 1 on q_b. Split on q_a first, then rotate
  // q_b within each branch.
  const double r0 = std::hypot(m[0], m[2]);  // q_a = 0 branch: indices 0, 2
  const double r1 = std::hypot(m[1], m[3]);  // q_a = 1 branch: indices 1, 3
  const double alpha = 2.0 * std::atan2(r1, r0);
  const double beta0 = r0 > 1e-15 ? 2.0 * std::atan2(m[2], m[0]) : 0.0;
  const double beta1 = r1 > 1e-15 ? 2.0 * std::atan2(m[3], m[1]) : 0.0;

  Circuit frag(std::max(qubit_a, qubit_b) + 1);
  frag.push(GateOp::ry(qubit_a, alpha));
  frag.push(GateOp::x(qubit_a));
  frag.push(GateOp::cry(qubit_a, qubit_b, beta0));
  frag.push(GateOp::x(qubit_a));
  frag.push(GateOp::cry(qubit_a, qubit_b, beta1));

  // Sign pattern via Z(q_a), Z(q_b), CZ; a leftover global -1 is accepted.
  const auto sign = [&](int i) { return y[static_cast<std::size_t>(i)] < 0.0 ? -1 : 1; };
  const int s0 = sign(0);
  const bool za = sign(1) != s0;
  const bool zb = sign(2) != s0;
  const int expect3 = s0 * (za ? -1 : 1) * (zb ? -1 : 1);
  const bool czp = sign(3) != expect3;
  if (za) frag.push(GateOp::z(qubit_a));
  if (zb) frag.push(GateOp::z(qubit_b));
  if (czp) frag.push(GateOp::cz(qubit_a, qubit_b));
  return frag;
}

Circuit encode_fragment(const EncodedInput& input, int qubit_a, int qubit_b) {
  switch (input.method) {
    case EncodingMethod::Basis: {
      if (input.basis_value < 0 || input.basis_value > 3) {
        throw Error(ErrorCategory::Encoding, "basis value outside [0, 3]");
      }
      Circuit frag(std::max(qubit_a, qubit_b) + 1);
      if (input.basis_value & 1) frag.push(GateOp::x(qubit_a));
      if (input.basis_value & 2) frag.push(GateOp::x(qubit_b));
      return frag;
    }
    case EncodingMethod::Rotation:
      return rotation_encode(input.values, qubit_a, qubit_b);
    case EncodingMethod::Amplitude:
      return amplitude_encode(input.values, qubit_a, qubit_b);
  }
  throw Error(ErrorCategory::Internal, "unreachable encoding method");
}

int qubit_cost(EncodingMethod method, int n_points, int bits_per_point) {
  if (n_points < 1) {
    throw Error(ErrorCategory::Encoding, "n_points must be >= 1");
  }
  switch (method) {
    case EncodingMethod::Basis:
      if (bits_per_point < 1) {
        throw Error(ErrorCategory::Encoding, "bits_per_point must be >= 1");
      }
      return n_points * bits_per_point;
    case EncodingMethod::Rotation:
      return n_points;
    case EncodingMethod::Amplitude: {
      if ((n_points & (n_points - 1)) != 0) {
        throw Error(ErrorCategory::Encoding,
                    "amplitude encoding wants a power-of-2 point count, got " +
                        std::to_string(n_points));
      }
      int bits = 0;
      for (int v = n_points; v > 1; v >>= 1) ++bits;
      return bits;
    }
  }
  throw Error(ErrorCategory::Internal, "unreachable encoding method");
}

}  // namespace qsc
