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

#include "qsc/errors.hpp"
#include "qsc/rng.hpp"
#include "qsc/sim.hpp"

using namespace qsc;

namespace {

constexpr double kPi = 3.14159265358979323846;

StateVector random_state(int num_qubits, Rng& rng) {
  StateVector s = zero_state(num_qubits);
  double norm = 0.0;
  for (cdouble& a : s.amplitudes) {
    a = cdouble{rng.gaussian(), rng.gaussian()};
    norm += std::norm(a);
  }
  norm = std::sqrt(norm);
  for (cdouble& a : s.amplitudes) a /= norm;
  return s;
}

GateOp random_gate(int num_qubits, Rng& rng) {
  const int kind = static_cast<int>(rng.uniform_int(11));
  const auto q = [&](int exclude1 = -1, int exclude2 = -1) {
    while (true) {
      const int c = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(num_qubits)));
      if (c != exclude1 && c != exclude2) return c;
    }
  };
  const double theta = rng.uniform(0.0, 2.0 * kPi);
  switch (kind) {
    case 0: return GateOp::h(q());
    case 1: return GateOp::x(q());
    case 2: return GateOp::y(q());
    case 3: return GateOp::z(q());
    case 4: return GateOp::rx(q(), theta);
    case 5: return GateOp::ry(q(), theta);
    case 6: return GateOp::rz(q(), theta);
    case 7: {
      const int a = q();
      return GateOp::cnot(a, q(a));
    }
    case 8: {
      const int a = q();
      return GateOp::cz(a, q(a));
    }
    case 9: {
      const int a = q();
      return GateOp::cry(a, q(a), theta);
    }
    default: {
      const int a = q();
      const int b = q(a);
      return GateOp::cswap(a, b, q(a, b));
    }
  }
}

}  // namespace

TEST_SUITE_BEGIN("sim");

TEST_CASE("zero_state basics") {
  const StateVector s1 = zero_state(1);
  REQUIRE(s1.dim() == 2);
  CHECK(s1.amplitudes[0] == cdouble{1.0, 0.0});
  CHECK(s1.amplitudes[1] == cdouble{0.0, 0.0});

  const StateVector s2 = zero_state(2);
  REQUIRE(s2.dim() == 4);
  CHECK(s2.amplitudes[0] == cdouble{1.0, 0.0});
  for (std::size_t i = 1; i < 4; ++i) CHECK(s2.amplitudes[i] == cdouble{0.0, 0.0});

  const StateVector s5 = zero_state(5);
  REQUIRE(s5.dim() == 32);
  CHECK(s5.amplitudes[0] == cdouble{1.0, 0.0});

  CHECK_THROWS_AS(zero_state(0), Error);
  CHECK_THROWS_AS(zero_state(13), Error);
  try {
    zero_state(0);
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Config);
  }
}

TEST_CASE("single-gate examples") {
  SUBCASE("H on |0>") {
    const StateVector s = apply_gate(zero_state(1), GateOp::h(0));
    CHECK(std::abs(s.amplitudes[0] - cdouble{1.0 / std::sqrt(2.0), 0}) < 1e-15);
    CHECK(std::abs(s.amplitudes[1] - cdouble{1.0 / std::sqrt(2.0), 0}) < 1e-15);
  }
  SUBCASE("RX(pi) on |0> gives (0, -i)") {
    const StateVector s = apply_gate(zero_state(1), GateOp::rx(0, kPi));
    CHECK(std::abs(s.amplitudes[0]) < 1e-15);
    CHECK(std::abs(s.amplitudes[1] - cdouble{0.0, -1.0}) < 1e-15);
  }
  SUBCASE("X on |0>") {
    const StateVector s = apply_gate(zero_state(1), GateOp::x(0));
    CHECK(s.amplitudes[0] == cdouble{0.0, 0.0});
    CHECK(s.amplitudes[1] == cdouble{1.0, 0.0});
  }
  SUBCASE("CSWAP with control set swaps targets") {
    // qubit 0 control = |1>, qubit 1 = |1>, qubit 2 = |0>  ->  |01> -> |10>
    StateVector s = zero_state(3);
    apply_gate_inplace(s, GateOp::x(0));
    apply_gate_inplace(s, GateOp::x(1));
    apply_gate_inplace(s, GateOp::cswap(0, 1, 2));
    // targets (1, 2) were |q2 q1> = |01>; now |10>: qubit 2 set, qubit 1 clear
    CHECK(std::abs(s.amplitudes[0b101] - cdouble{1.0, 0.0}) < 1e-15);
  }
  SUBCASE("invalid qubit index") {
    CHECK_THROWS_AS(apply_gate(zero_state(2), GateOp::x(2)), Error);
    try {
      apply_gate(zero_state(2), GateOp::cnot(0, 0));
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::Dimension);
    }
  }
}

TEST_CASE("run_circuit basics") {
  Rng rng(11);
  SUBCASE("empty circuit is identity") {
    const StateVector init = random_state(3, rng);
    const StateVector out = run_circuit(Circuit(3), init);
    for (std::size_t i = 0; i < init.dim(); ++i) CHECK(out.amplitudes[i] == init.amplitudes[i]);
  }
  SUBCASE("H twice is identity") {
    Circuit c(1);
    c.push(GateOp::h(0));
    c.push(GateOp::h(0));
    const StateVector out = run_circuit(c);
    CHECK(std::abs(out.amplitudes[0] - cdouble{1.0, 0.0}) < 1e-15);
  }
  SUBCASE("X twice is identity on a random state") {
    const StateVector init = random_state(4, rng);
    Circuit c(4);
    c.push(GateOp::x(2));
    c.push(GateOp::x(2));
    const StateVector out = run_circuit(c, init);
    for (std::size_t i = 0; i < init.dim(); ++i) {
      CHECK(std::abs(out.amplitudes[i] - init.amplitudes[i]) < 1e-15);
    }
  }
  SUBCASE("Idle ops are no-ops") {
    const StateVector init = random_state(2, rng);
    Circuit c(2);
    c.push(GateOp::idle(0, 3.0));
    c.push(GateOp::idle(1, 1.0));
    const StateVector out = run_circuit(c, init);
    for (std::size_t i = 0; i < init.dim(); ++i) CHECK(out.amplitudes[i] == init.amplitudes[i]);
  }
}

TEST_CASE("measure_probability") {
  CHECK(measure_probability(zero_state(1), 0, 0) == doctest::Approx(1.0));
  CHECK(measure_probability(apply_gate(zero_state(1), GateOp::h(0)), 0, 0) ==
        doctest::Approx(0.5));

  SUBCASE("matches brute-force enumeration on random 3-qubit states") {
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
      const StateVector s = random_state(3, rng);
      for (int qubit = 0; qubit < 3; ++qubit) {
        // independent oracle: walk all 8 basis indices and decode the bit
        double want0 = 0.0;
        double want1 = 0.0;
        for (std::size_t idx = 0; idx < 8; ++idx) {
          const double w = std::norm(s.amplitudes[idx]);
          if ((idx >> qubit) & 1) {
            want1 += w;
          } else {
            want0 += w;
          }
        }
        CHECK(measure_probability(s, qubit, 0) == doctest::Approx(want0).epsilon(1e-12));
        CHECK(measure_probability(s, qubit, 1) == doctest::Approx(want1).epsilon(1e-12));
        CHECK(measure_probability(s, qubit, 0) + measure_probability(s, qubit, 1) ==
              doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
  SUBCASE("invalid qubit") {
    CHECK_THROWS_AS(measure_probability(zero_state(2), 2, 0), Error);
    CHECK_THROWS_AS(measure_probability(zero_state(2), 0, 2), Error);
  }
}

TEST_CASE("to_density") {
  SUBCASE("|0>") {
    const DensityMatrix rho = to_density(zero_state(1));
    CHECK(rho.at(0, 0) == cdouble{1.0, 0.0});
    CHECK(rho.at(0, 1) == cdouble{0.0, 0.0});
    CHECK(rho.at(1, 0) == cdouble{0.0, 0.0});
    CHECK(rho.at(1, 1) == cdouble{0.0, 0.0});
  }
  SUBCASE("|+> has all entries 0.5") {
    const DensityMatrix rho = to_density(apply_gate(zero_state(1), GateOp::h(0)));
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        CHECK(std::abs(rho.at(i, j) - cdouble{0.5, 0.0}) < 1e-15);
      }
    }
  }
  SUBCASE("random states satisfy the density invariants") {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      const StateVector s = random_state(3, rng);
      const DensityMatrix rho = to_density(s);
      CHECK(rho.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
      double purity = 0.0;  // rank 1 <=> tr(rho^2) = 1
      for (std::size_t i = 0; i < rho.dim(); ++i) {
        for (std::size_t j = 0; j < rho.dim(); ++j) {
          purity += std::real(rho.at(i, j) * rho.at(j, i));
          CHECK(std::abs(rho.at(i, j) - std::conj(rho.at(j, i))) < 1e-12);
        }
      }
      CHECK(purity == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("density-matrix gate application") {
  SUBCASE("X maps |0><0| to |1><1|") {
    const DensityMatrix rho = apply_gate(to_density(zero_state(1)), GateOp::x(0));
    CHECK(std::abs(rho.at(1, 1) - cdouble{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(rho.at(0, 0)) < 1e-15);
  }
  SUBCASE("any unitary fixes the maximally mixed state") {
    Rng rng(7);
    DensityMatrix mixed(2);
    for (std::size_t i = 0; i < 4; ++i) mixed.at(i, i) = cdouble{0.25, 0.0};
    for (int trial = 0; trial < 20; ++trial) {
      const DensityMatrix out = apply_gate(mixed, random_gate(2, rng));
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
          CHECK(std::abs(out.at(i, j) - mixed.at(i, j)) < 1e-12);
        }
      }
    }
  }
  SUBCASE("pure-state path agrees with the statevector oracle") {
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
      const StateVector s = random_state(3, rng);
      const GateOp g = random_gate(3, rng);
      const DensityMatrix via_density = apply_gate(to_density(s), g);
      const DensityMatrix via_state = to_density(apply_gate(s, g));
      for (std::size_t i = 0; i < via_state.dim(); ++i) {
        for (std::size_t j = 0; j < via_state.dim(); ++j) {
          CHECK(std::abs(via_density.at(i, j) - via_state.at(i, j)) < 1e-12);
        }
      }
      CHECK(via_density.trace_real() == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("density-matrix measurement") {
  SUBCASE("maximally mixed 1-qubit state") {
    DensityMatrix mixed(1);
    mixed.at(0, 0) = cdouble{0.5, 0.0};
    mixed.at(1, 1) = cdouble{0.5, 0.0};
    CHECK(measure_probability(mixed, 0, 0) == doctest::Approx(0.5));
    CHECK(measure_probability(mixed, 0, 1) == doctest::Approx(0.5));
  }
  SUBCASE("pure rho equals the statevector probabilities") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      const StateVector s = random_state(3, rng);
      const DensityMatrix rho = to_density(s);
      for (int q = 0; q < 3; ++q) {
        CHECK(measure_probability(rho, q, 0) ==
              doctest::Approx(measure_probability(s, q, 0)).epsilon(1e-10));
        CHECK(measure_probability(rho, q, 0) + measure_probability(rho, q, 1) ==
              doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("norm conservation over long random circuits") {
  Rng rng(23);
  StateVector s = zero_state(5);
  for (int i = 0; i < 100; ++i) apply_gate_inplace(s, random_gate(5, rng));
  CHECK(std::abs(s.norm_sq() - 1.0) < 1e-8);
}

TEST_CASE("every gate kind is unitary") {
  Rng rng(29);
  const auto check_unitary = [](const GateOp& op) {
    const auto u = gate_unitary(op);
    const std::size_t d = std::size_t{1} << op.arity();
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        cdouble dot{0.0, 0.0};
        for (std::size_t k = 0; k < d; ++k) dot += u[i * d + k] * std::conj(u[j * d + k]);
        const cdouble want = i == j ? cdouble{1.0, 0.0} : cdouble{0.0, 0.0};
        CHECK(std::abs(dot - want) < 1e-12);
      }
    }
  };
  const double theta = rng.uniform(0.0, 2.0 * kPi);
  check_unitary(GateOp::h(0));
  check_unitary(GateOp::x(0));
  check_unitary(GateOp::y(0));
  check_unitary(GateOp::z(0));
  check_unitary(GateOp::rx(0, theta));
  check_unitary(GateOp::ry(0, theta));
  check_unitary(GateOp::rz(0, theta));
  check_unitary(GateOp::cnot(0, 1));
  check_unitary(GateOp::cz(0, 1));
  check_unitary(GateOp::cry(0, 1, theta));
  check_unitary(GateOp::cswap(0, 1, 2));
}

TEST_CASE("statevector and density paths give identical probabilities") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    Circuit c(4);
    for (int i = 0; i < 20; ++i) c.push(random_gate(4, rng));
    const StateVector s = run_circuit(c);
    DensityMatrix rho = to_density(zero_state(4));
    for (const GateOp& op : c.ops) apply_gate_inplace(rho, op);
    for (int q = 0; q < 4; ++q) {
      CHECK(std::abs(measure_probability(s, q, 0) - measure_probability(rho, q, 0)) < 1e-9);
    }
  }
}

TEST_CASE("gates are exactly linear on amplitudes") {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const GateOp g = random_gate(3, rng);
    const StateVector psi = random_state(3, rng);
    const StateVector phi = random_state(3, rng);
    const cdouble a{rng.gaussian(), rng.gaussian()};
    const cdouble b{rng.gaussian(), rng.gaussian()};
    StateVector combo = zero_state(3);
    for (std::size_t i = 0; i < 8; ++i) {
      combo.amplitudes[i] = a * psi.amplitudes[i] + b * phi.amplitudes[i];
    }
    const StateVector lhs = apply_gate(combo, g);
    const StateVector gp = apply_gate(psi, g);
    const StateVector gq = apply_gate(phi, g);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(std::abs(lhs.amplitudes[i] - (a * gp.amplitudes[i] + b * gq.amplitudes[i])) < 1e-12);
    }
  }
}

TEST_CASE("with_idle_markers") {
  SUBCASE("gap on a reused qubit gets an Idle of the right duration") {
    Circuit c(3);
    c.push(GateOp::h(0));     // moment 0
    c.push(GateOp::h(1));     // moment 0
    c.push(GateOp::h(1));     // moment 1
    c.push(GateOp::h(1));     // moment 2
    c.push(GateOp::cz(0, 1)); // moment 3: qubit 0 idled moments 1-2
    const Circuit out = with_idle_markers(c);
    REQUIRE(out.ops.size() == 6);
    CHECK(out.ops[4].kind == GateKind::Idle);
    CHECK(out.ops[4].qubits[0] == 0);
    CHECK(out.ops[4].duration == doctest::Approx(2.0));
  }
  SUBCASE("no leading idles and no idles without a gap") {
    Circuit c(2);
    c.push(GateOp::h(0));
    c.push(GateOp::h(1));
    c.push(GateOp::cz(0, 1));
    const Circuit out = with_idle_markers(c);
    CHECK(out.ops.size() == 3);  // unchanged
  }
  SUBCASE("noiseless semantics are unchanged") {
    Rng rng(41);
    Circuit c(4);
    for (int i = 0; i < 15; ++i) c.push(random_gate(4, rng));
    const StateVector a = run_circuit(c);
    const StateVector b = run_circuit(with_idle_markers(c));
    for (std::size_t i = 0; i < a.dim(); ++i) {
      CHECK(std::abs(a.amplitudes[i] - b.amplitudes[i]) < 1e-15);
    }
  }
}

TEST_SUITE_END();
