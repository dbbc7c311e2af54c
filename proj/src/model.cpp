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

#include "qsc/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qsc/errors.hpp"

namespace qsc {

int LayerSpec::param_count() const {
  switch (kind) {
    case LayerKind::SingleQubitUnitary: return 4;
    case LayerKind::DualQubitUnitary: return 2;
    case LayerKind::Entanglement: return entangler == Entangler::CRY ? 1 : 0;
  }
  return 0;
}

std::string LayerSpec::token() const {
  switch (kind) {
    case LayerKind::SingleQubitUnitary: return "single";
    case LayerKind::DualQubitUnitary: return "dual";
    case LayerKind::Entanglement:
      switch (entangler) {
        case Entangler::CZ: return "cz";
        case Entangler::CNOT: return "cnot";
        case Entangler::CRY: return "cry";
      }
  }
  return "?";
}

LayerSpec LayerSpec::from_token(const std::string& token) {
  if (token == "single") return {LayerKind::SingleQubitUnitary, Entangler::CZ};
  if (token == "dual") return {LayerKind::DualQubitUnitary, Entangler::CZ};
  if (token == "cz") return {LayerKind::Entanglement, Entangler::CZ};
  if (token == "cnot") return {LayerKind::Entanglement, Entangler::CNOT};
  if (token == "cry") return {LayerKind::Entanglement, Entangler::CRY};
  throw Error(ErrorCategory::Model, "unknown layer token '" + token + "'");
}

int ClassModel::param_count() const {
  int n = 0;
  for (const LayerSpec& l : layers) n += l.param_count();
  return n;
}

void ClassModel::validate() const {
  if (static_cast<int>(params.size()) != param_count()) {
    throw Error(ErrorCategory::Model,
                "model has " + std::to_string(params.size()) + " parameters, layer stack wants " +
                    std::to_string(param_count()));
  }
}

std::vector<LayerSpec> ClassModel::default_stack() {
  return {{LayerKind::DualQubitUnitary, Entangler::CZ},
          {LayerKind::Entanglement, Entangler::CZ},
          {LayerKind::SingleQubitUnitary, Entangler::CZ}};
}

ClassModel ClassModel::with_stack(int label, std::vector<LayerSpec> layers) {
  ClassModel m;
  m.label = label;
  m.layers = std::move(layers);
  m.params.assign(static_cast<std::size_t>(m.param_count()), 0.0);
  return m;
}

std::vector<ParamGate> learning_gates(const ClassModel& model, int qubit_a, int qubit_b) {
  model.validate();
  std::vector<ParamGate> gates;
  int p = 0;
  for (const LayerSpec& layer : model.layers) {
    switch (layer.kind) {
      case LayerKind::DualQubitUnitary: {
        const double ry = model.params[static_cast<std::size_t>(p)];
        const double rz = model.params[static_cast<std::size_t>(p + 1)];
        gates.push_back({GateOp::ry(qubit_a, ry), p});
        gates.push_back({GateOp::ry(qubit_b, ry), p});
        gates.push_back({GateOp::rz(qubit_a, rz), p + 1});
        gates.push_back({GateOp::rz(qubit_b, rz), p + 1});
        p += 2;
        break;
      }
      case LayerKind::Entanglement:
        switch (layer.entangler) {
          case Entangler::CZ:
            gates.push_back({GateOp::cz(qubit_a, qubit_b), -1});
            break;
          case Entangler::CNOT:
            gates.push_back({GateOp::cnot(qubit_a, qubit_b), -1});
            break;
          case Entangler::CRY:
            gates.push_back({GateOp::cry(qubit_a, qubit_b, model.params[static_cast<std::size_t>(p)]), p});
            p += 1;
            break;
        }
        break;
      case LayerKind::SingleQubitUnitary: {
        gates.push_back({GateOp::ry(qubit_a, model.params[static_cast<std::size_t>(p)]), p});
        gates.push_back({GateOp::rz(qubit_a, model.params[static_cast<std::size_t>(p + 1)]), p + 1});
        gates.push_back({GateOp::ry(qubit_b, model.params[static_cast<std::size_t>(p + 2)]), p + 2});
        gates.push_back({GateOp::rz(qubit_b, model.params[static_cast<std::size_t>(p + 3)]), p + 3});
        p += 4;
        break;
      }
    }
  }
  return gates;
}

Circuit build_classifier_circuit(const ClassModel& model, const EncodedInput& input) {
  Circuit c(5);
  c.push(GateOp::h(kAncillaQubit));
  for (const ParamGate& g : learning_gates(model, kLearnQubitA, kLearnQubitB)) c.push(g.op);
  c.append(encode_fragment(input, kDataQubitA, kDataQubitB));
  c.push(GateOp::cswap(kAncillaQubit, kLearnQubitA, kDataQubitA));
  c.push(GateOp::cswap(kAncillaQubit, kLearnQubitB, kDataQubitB));
  c.push(GateOp::h(kAncillaQubit));
  return c;
}

Backend Backend::noisy(NoiseConfig config, DDPolicy policy) {
  Backend b;
  b.kind = Kind::Noisy;
  b.noise = std::move(config);
  b.dd = std::move(policy);
  return b;
}

SwapTestResult swap_test(const ClassModel& model, const EncodedInput& input,
                         const Backend& backend) {
  const Circuit circuit = build_classifier_circuit(model, input);
  double p0 = 0.0;
  if (backend.kind == Backend::Kind::Pure) {
    p0 = measure_probability(run_circuit(circuit), kAncillaQubit, 0);
  } else {
    Circuit scheduled = with_idle_markers(circuit);
    if (backend.dd.enabled) scheduled = insert_dd(scheduled, backend.dd);
    const DensityMatrix rho = run_noisy(scheduled, backend.noise);
    p0 = apply_readout_flip(measure_probability(rho, kAncillaQubit, 0), backend.noise.readout_flip);
  }
  // floor per the fidelity definition; ceiling guards float roundoff above 1
  return {p0, std::clamp(2.0 * p0 - 1.0, 0.0, 1.0)};
}

std::pair<double, double> class_probabilities(double f3, double f6) {
  if (f3 < -1e-9 || f3 > 1.0 + 1e-9 || f6 < -1e-9 || f6 > 1.0 + 1e-9) {
    throw Error(ErrorCategory::Model, "fidelities must be in [0, 1]");
  }
  f3 = std::clamp(f3, 0.0, 1.0);
  f6 = std::clamp(f6, 0.0, 1.0);
  const double total = f3 + f6;
  if (total < 1e-12) return {0.5, 0.5};
  return {f3 / total, f6 / total};
}

int predict(const EncodedInput& input, const ClassModel& model3, const ClassModel& model6,
            const Backend& backend) {
  const double f3 = swap_test(model3, input, backend).fidelity;
  const double f6 = swap_test(model6, input, backend).fidelity;
  if (std::abs(f3 - f6) < 1e-12) return model3.label;
  return f3 > f6 ? model3.label : model6.label;
}

void save_checkpoint(const ClassModel& model, const std::string& path) {
  model.validate();
  std::ofstream out(path);
  if (!out) throw Error(ErrorCategory::Data, "cannot open checkpoint file '" + path + "'");
  out << "label " << model.label << "\n";
  out << "layers";
  for (const LayerSpec& l : model.layers) out << ' ' << l.token();
  out << "\n";
  out << "params " << model.params.size() << "\n";
  char buf[64];
  for (const double p : model.params) {
    std::snprintf(buf, sizeof buf, "%.17g", p);
    out << buf << "\n";
  }
  if (!out) throw Error(ErrorCategory::Data, "failed writing checkpoint '" + path + "'");
}

ClassModel load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::Data, "cannot open checkpoint file '" + path + "'");
  ClassModel m;
  std::string word;
  if (!(in >> word) || word != "label" || !(in >> m.label)) {
    throw Error(ErrorCategory::Parse, "checkpoint '" + path + "': expected 'label <int>'");
  }
  if (!(in >> word) || word != "layers") {
    throw Error(ErrorCategory::Parse, "checkpoint '" + path + "': expected 'layers ...'");
  }
  std::string rest;
  std::getline(in, rest);
  std::istringstream layer_line(rest);
  while (layer_line >> word) m.layers.push_back(LayerSpec::from_token(word));
  std::size_t count = 0;
  if (!(in >> word) || word != "params" || !(in >> count)) {
    throw Error(ErrorCategory::Parse, "checkpoint '" + path + "': expected 'params <count>'");
  }
  m.params.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!(in >> m.params[i])) {
      throw Error(ErrorCategory::Parse,
                  "checkpoint '" + path + "': missing parameter " + std::to_string(i));
    }
  }
  m.validate();
  return m;
}

}  // namespace qsc
