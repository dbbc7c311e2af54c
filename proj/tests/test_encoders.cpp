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

#include <doctest.h>

#include <cmath>

#include "qsc/encoders.hpp"
#include "qsc/errors.hpp"
#include "qsc/rng.hpp"

using namespace qsc;

namespace {

constexpr double kPi = 3.14159265358979323846;

// State of the two data qubits after running an encoder fragment on |00>.
StateVector encoded_state(const Circuit& frag) { return run_circuit(frag); }

// |<a|b>| == 1 up to global phase.
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
  return std::abs(std::abs(inner_product(a, b)) - 1.0) < tol;
}

}  // namespace

TEST_SUITE_BEGIN("encoders");

TEST_CASE("basis encoding") {
  SUBCASE("value 0 is an empty fragment") {
    const Circuit frag = basis_encode(0, 2);
    CHECK(frag.ops.empty());
    const StateVector s = encoded_state(frag);
    CHECK(std::abs(s.amplitudes[0] - cdouble{1.0, 0.0}) < 1e-15);
  }
  SUBCASE("value 2 gives |10>") {
    const StateVector s = encoded_state(basis_encode(2, 2));
    CHECK(std::abs(s.amplitudes[2] - cdouble{1.0, 0.0}) < 1e-15);
  }
  SUBCASE("value 3 gives |11>") {
    const StateVector s = encoded_state(basis_encode(3, 2));
    CHECK(std::abs(s.amplitudes[3] - cdouble{1.0, 0.0}) < 1e-15);
  }
  SUBCASE("out-of-range value") {
    CHECK_THROWS_AS(basis_encode(4, 2), Error);
    CHECK_THROWS_AS(basis_encode(-1, 2), Error);
    try {
      basis_encode(4, 2);
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::Encoding);
    }
  }
}

TEST_CASE("rotation encoding") {
  SUBCASE("zero angles leave |00>") {
    const StateVector s = encoded_state(rotation_encode(std::array{0.0, 0.0, 0.0, 0.0}, 0, 1));
    CHECK(std::abs(s.amplitudes[0] - cdouble{1.0, 0.0}) < 1e-15);
  }
  SUBCASE("RY(pi) flips q_a up to phase") {
    const StateVector s = encoded_state(rotation_encode(std::array{kPi, 0.0, 0.0, 0.0}, 0, 1));
    CHECK(measure_probability(s, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("RY(pi/2) gives P(0) = cos^2(pi/4) = 0.5") {
    const StateVector s =
        encoded_state(rotation_encode(std::array{kPi / 2.0, 0.0, 0.0, 0.0}, 0, 1));
    CHECK(measure_probability(s, 0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("wrong arity") {
    const std::array three{0.1, 0.2, 0.3};
    CHECK_THROWS_AS(rotation_encode(three, 0, 1), Error);
  }
  SUBCASE("gate order is RY,RZ on q_a then RY,RZ on q_b") {
    const Circuit frag = rotation_encode(std::array{0.1, 0.2, 0.3, 0.4}, 3, 4);
    REQUIRE(frag.ops.size() == 4);
    CHECK(frag.ops[0].kind == GateKind::RY);
    CHECK(frag.ops[0].qubits[0] == 3);
    CHECK(frag.ops[1].kind == GateKind::RZ);
    CHECK(frag.ops[1].qubits[0] == 3);
    CHECK(frag.ops[2].kind == GateKind::RY);
    CHECK(frag.ops[2].qubits[0] == 4);
    CHECK(frag.ops[3].kind == GateKind::RZ);
    CHECK(frag.ops[3].qubits[0] == 4);
  }
  SUBCASE("the encoded state stays a product state") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      std::array<double, 4> angles{};
      for (double& a : angles) a = rng.uniform(0.0, 2.0 * kPi);
      const StateVector s = encoded_state(rotation_encode(angles, 0, 1));
      // Schmidt rank 1 <=> determinant of the 2x2 amplitude matrix vanishes
      const cdouble det =
          s.amplitudes[0] * s.amplitudes[3] - s.amplitudes[1] * s.amplitudes[2];
      CHECK(std::abs(det) < 1e-9);
    }
  }
}

TEST_CASE("amplitude encoding") {
  SUBCASE("(1,0,0,0) is |00>") {
    const StateVector s = encoded_state(amplitude_encode(std::array{1.0, 0.0, 0.0, 0.0}, 0, 1));
    CHECK(std::abs(s.amplitudes[0] - cdouble{1.0, 0.0}) < 1e-12);
  }
  SUBCASE("(1,1,1,1) gives four 0.5 amplitudes") {
    const StateVector s = encoded_state(amplitude_encode(std::array{1.0, 1.0, 1.0, 1.0}, 0, 1));
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(s.amplitudes[i] - cdouble{0.5, 0.0}) < 1e-12);
    }
  }
  SUBCASE("(3,4,0,0) gives (0.6, 0.8, 0, 0)") {
    const StateVector s = encoded_state(amplitude_encode(std::array{3.0, 4.0, 0.0, 0.0}, 0, 1));
    CHECK(std::abs(s.amplitudes[0] - cdouble{0.6, 0.0}) < 1e-12);
    CHECK(std::abs(s.amplitudes[1] - cdouble{0.8, 0.0}) < 1e-12);
    CHECK(std::abs(s.amplitudes[2]) < 1e-12);
    CHECK(std::abs(s.amplitudes[3]) < 1e-12);
  }
  SUBCASE("zero vector is rejected") {
    CHECK_THROWS_AS(amplitude_encode(std::array{0.0, 0.0, 0.0, 0.0}, 0, 1), Error);
  }
  SUBCASE("round-trip on random nonnegative vectors") {
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
      std::array<double, 4> x{};
      double norm = 0.0;
      for (double& v : x) {
        v = rng.uniform(0.0, 1.0);
        norm += v * v;
      }
      norm = std::sqrt(norm);
      if (norm < 1e-6) continue;
      const StateVector s = encoded_state(amplitude_encode(x, 0, 1));
      for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(s.amplitudes[i] - cdouble{x[i] / norm, 0.0}) < 1e-9);
      }
    }
  }
  SUBCASE("signed vectors match up to global phase") {
    Rng rng(9);
    for (int trial = 0; trial < 300; ++trial) {
      std::array<double, 4> x{};
      double norm = 0.0;
      for (double& v : x) {
        v = rng.uniform(-1.0, 1.0);
        norm += v * v;
      }
      norm = std::sqrt(norm);
      if (norm < 1e-6) continue;
      const StateVector s = encoded_state(amplitude_encode(x, 0, 1));
      StateVector want = zero_state(2);
      for (std::size_t i = 0; i < 4; ++i) want.amplitudes[i] = cdouble{x[i] / norm, 0.0};
      CHECK(equal_up_to_phase(s, want, 1e-9));
    }
  }
  SUBCASE("scale invariance for c > 0") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      std::array<double, 4> x{};
      for (double& v : x) v = rng.uniform(-1.0, 1.0);
      if (std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]) < 1e-6) continue;
      const double c = rng.uniform(0.1, 50.0);
      std::array<double, 4> cx{c * x[0], c * x[1], c * x[2], c * x[3]};
      const StateVector a = encoded_state(amplitude_encode(x, 0, 1));
      const StateVector b = encoded_state(amplitude_encode(cx, 0, 1));
      for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(a.amplitudes[i] - b.amplitudes[i]) < 1e-9);
      }
    }
  }
}

TEST_CASE("all encoders produce unit-norm states") {
  Rng rng(13);
  for (int value = 0; value < 4; ++value) {
    CHECK(std::abs(encoded_state(basis_encode(value, 2)).norm_sq() - 1.0) < 1e-12);
  }
  for (int trial = 0; trial < 50; ++trial) {
    std::array<double, 4> a{};
    for (double& v : a) v = rng.uniform(0.0, 2.0 * kPi);
    CHECK(std::abs(encoded_state(rotation_encode(a, 0, 1)).norm_sq() - 1.0) < 1e-12);
    std::array<double, 4> x{};
    for (double& v : x) v = rng.uniform(-2.0, 2.0);
    if (std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]) < 1e-6) continue;
    CHECK(std::abs(encoded_state(amplitude_encode(x, 0, 1)).norm_sq() - 1.0) < 1e-12);
  }
}

TEST_CASE("qubit_cost") {
  CHECK(qubit_cost(EncodingMethod::Amplitude, 4, 0) == 2);
  CHECK(qubit_cost(EncodingMethod::Rotation, 4, 0) == 4);
  CHECK(qubit_cost(EncodingMethod::Basis, 1, 2) == 2);
  // log2 scaling across powers of two
  CHECK(qubit_cost(EncodingMethod::Amplitude, 2, 0) == 1);
  CHECK(qubit_cost(EncodingMethod::Amplitude, 8, 0) == 3);
  CHECK_THROWS_AS(qubit_cost(EncodingMethod::Amplitude, 6, 0), Error);
  CHECK_THROWS_AS(qubit_cost(EncodingMethod::Rotation, 0, 0), Error);
}

TEST_CASE("encode_fragment places basis bits on the data qubits") {
  const EncodedInput in = EncodedInput::basis(2);
  const StateVector s = run_circuit(encode_fragment(in, 3, 4));
  // bit 1 of the value -> qubit 4
  CHECK(measure_probability(s, 4, 1) == doctest::Approx(1.0));
  CHECK(measure_probability(s, 3, 0) == doctest::Approx(1.0));
}

TEST_SUITE_END();
