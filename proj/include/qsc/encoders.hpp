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
#include <span>
#include <string>

#include "qsc/sim.hpp"

namespace qsc {

enum class EncodingMethod { Basis, Rotation, Amplitude };

const char* to_string(EncodingMethod m);
EncodingMethod encoding_from_string(const std::string& name);

// One classical sample, ready to be turned into a state-preparation fragment
// on the two data qubits.
struct EncodedInput {
  EncodingMethod method = EncodingMethod::Rotation;
  int basis_value = 0;               // Basis
  std::array<double, 4> values{};    // Rotation: radians; Amplitude: components

  static EncodedInput basis(int value);
  static EncodedInput rotation(std::span<const double> angles);
  static EncodedInput amplitude(std::span<const double> x);
};

// X gates on the qubits where the binary digit of `value` is 1; applying the
// fragment to |0...0> yields the computational basis state |value>.
Circuit basis_encode(int value, int num_qubits);

// [RY(a1) q_a, RZ(a2) q_a, RY(a3) q_b, RZ(a4) q_b]; the result is a product
// state of the two qubits.
Circuit rotation_encode(std::span<const double> angles, int qubit_a, int qubit_b);

// Prepares amplitudes x/||x|| on the two data qubits via one RY on q_a and
// two controlled-RY onto q_b, with Z/CZ sign flips for negative components
// (equal up to a global phase when an odd sign pattern forces it).
Circuit amplitude_encode(std::span<const double> x, int qubit_a, int qubit_b);

// State-preparation fragment for the classifier's data qubits. Basis values
// use bit 0 -> qubit_a, bit 1 -> qubit_b.
Circuit encode_fragment(const EncodedInput& input, int qubit_a, int qubit_b);

// Qubits needed to store n_points data points (Table-style scaling):
// Basis n*m, Rotation n, Amplitude log2(n) (n must be a power of two).
int qubit_cost(EncodingMethod method, int n_points, int bits_per_point);

}  // namespace qsc
