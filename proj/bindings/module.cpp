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

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsc/data.hpp"
#include "qsc/errors.hpp"
#include "qsc/experiment.hpp"
#include "qsc/plot.hpp"
#include "qsc/version.hpp"

namespace py = pybind11;
using namespace qsc;

namespace {

std::array<double, 4> to_array4(const std::vector<double>& v, const char* what) {
  if (v.size() != 4) {
    throw Error(ErrorCategory::Encoding,
                std::string(what) + " wants exactly 4 values, got " + std::to_string(v.size()));
  }
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "swap-test variational classifier: simulator, encoders, training";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "QscError");

  // --- sim ---
  py::enum_<GateKind>(m, "GateKind")
      .value("H", GateKind::H)
      .value("X", GateKind::X)
      .value("Y", GateKind::Y)
      .value("Z", GateKind::Z)
      .value("RX", GateKind::RX)
      .value("RY", GateKind::RY)
      .value("RZ", GateKind::RZ)
      .value("CNOT", GateKind::CNOT)
      .value("CZ", GateKind::CZ)
      .value("CRY", GateKind::CRY)
      .value("CSWAP", GateKind::CSWAP)
      .value("IDLE", GateKind::Idle);

  py::class_<GateOp>(m, "GateOp")
      .def_readonly("kind", &GateOp::kind)
      .def_readonly("theta", &GateOp::theta)
      .def_readonly("duration", &GateOp::duration)
      .def_property_readonly("qubits",
                             [](const GateOp& op) {
                               std::vector<int> qs;
                               for (int i = 0; i < op.arity(); ++i) {
                                 qs.push_back(op.qubits[static_cast<std::size_t>(i)]);
                               }
                               return qs;
                             })
      .def_static("h", &GateOp::h)
      .def_static("x", &GateOp::x)
      .def_static("y", &GateOp::y)
      .def_static("z", &GateOp::z)
      .def_static("rx", &GateOp::rx)
      .def_static("ry", &GateOp::ry)
      .def_static("rz", &GateOp::rz)
      .def_static("cnot", &GateOp::cnot)
      .def_static("cz", &GateOp::cz)
      .def_static("cry", &GateOp::cry)
      .def_static("cswap", &GateOp::cswap)
      .def_static("idle", &GateOp::idle)
      .def("__repr__", [](const GateOp& op) {
        std::string r = std::string("GateOp(") + to_string(op.kind);
        for (int i = 0; i < op.arity(); ++i) {
          r += (i ? "," : " q=") + std::to_string(op.qubits[static_cast<std::size_t>(i)]);
        }
        if (op.is_parametrized()) r += ", theta=" + std::to_string(op.theta);
        return r + ")";
      });

  py::class_<Circuit>(m, "Circuit")
      .def(py::init<int>(), py::arg("num_qubits"))
      .def_readonly("num_qubits", &Circuit::num_qubits)
      .def_readonly("ops", &Circuit::ops)
      .def("push", &Circuit::push)
      .def("append", &Circuit::append)
      .def("__len__", [](const Circuit& c) { return c.ops.size(); });

  py::class_<StateVector>(m, "StateVector")
      .def_readonly("num_qubits", &StateVector::num_qubits)
      .def_readonly("amplitudes", &StateVector::amplitudes)
      .def("norm_sq", &StateVector::norm_sq);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def_readonly("num_qubits", &DensityMatrix::num_qubits)
      .def_readonly("entries", &DensityMatrix::entries)
      .def("trace_real", &DensityMatrix::trace_real);

  m.def("zero_state", &zero_state, py::arg("num_qubits"));
  m.def("apply_gate", py::overload_cast<const StateVector&, const GateOp&>(&apply_gate));
  m.def("run_circuit", py::overload_cast<const Circuit&, StateVector>(&run_circuit));
  m.def("run_circuit", py::overload_cast<const Circuit&>(&run_circuit));
  m.def("measure_probability",
        py::overload_cast<const StateVector&, int, int>(&measure_probability));
  m.def("measure_probability_density",
        py::overload_cast<const DensityMatrix&, int, int>(&measure_probability));
  m.def("inner_product", &inner_product);
  m.def("to_density", &to_density);
  m.def("apply_gate_density",
        py::overload_cast<const DensityMatrix&, const GateOp&>(&apply_gate));
  m.def("with_idle_markers", &with_idle_markers);

  // --- encoders ---
  py::enum_<EncodingMethod>(m, "EncodingMethod")
      .value("BASIS", EncodingMethod::Basis)
      .value("ROTATION", EncodingMethod::Rotation)
      .value("AMPLITUDE", EncodingMethod::Amplitude);

  py::class_<EncodedInput>(m, "EncodedInput")
      .def_readonly("method", &EncodedInput::method)
      .def_readonly("basis_value", &EncodedInput::basis_value)
      .def_readonly("values", &EncodedInput::values)
      .def_static("basis", &EncodedInput::basis)
      .def_static("rotation",
                  [](const std::vector<double>& a) {
                    return EncodedInput::rotation(to_array4(a, "rotation encoding"));
                  })
      .def_static("amplitude", [](const std::vector<double>& x) {
        return EncodedInput::amplitude(to_array4(x, "amplitude encoding"));
      });

  m.def("basis_encode", &basis_encode, py::arg("value"), py::arg("num_qubits"));
  m.def(
      "rotation_encode",
      [](const std::vector<double>& angles, int qa, int qb) {
        return rotation_encode(angles, qa, qb);
      },
      py::arg("angles"), py::arg("qubit_a"), py::arg("qubit_b"));
  m.def(
      "amplitude_encode",
      [](const std::vector<double>& x, int qa, int qb) { return amplitude_encode(x, qa, qb); },
      py::arg("x"), py::arg("qubit_a"), py::arg("qubit_b"));
  m.def("encode_fragment", &encode_fragment, py::arg("input"), py::arg("qubit_a"),
        py::arg("qubit_b"));
  m.def("qubit_cost", &qubit_cost, py::arg("method"), py::arg("n_points"),
        py::arg("bits_per_point") = 1);

  // --- model ---
  py::enum_<LayerKind>(m, "LayerKind")
      .value("SINGLE_QUBIT_UNITARY", LayerKind::SingleQubitUnitary)
      .value("DUAL_QUBIT_UNITARY", LayerKind::DualQubitUnitary)
      .value("ENTANGLEMENT", LayerKind::Entanglement);

  py::enum_<Entangler>(m, "Entangler")
      .value("CZ", Entangler::CZ)
      .value("CNOT", Entangler::CNOT)
      .value("CRY", Entangler::CRY);

  py::class_<LayerSpec>(m, "LayerSpec")
      .def(py::init([](LayerKind kind, Entangler ent) {
             return LayerSpec{kind, ent};
           }),
           py::arg("kind"), py::arg("entangler") = Entangler::CZ)
      .def_readonly("kind", &LayerSpec::kind)
      .def_readonly("entangler", &LayerSpec::entangler)
      .def("param_count", &LayerSpec::param_count)
      .def("token", &LayerSpec::token)
      .def_static("from_token", &LayerSpec::from_token);

  py::class_<ClassModel>(m, "ClassModel")
      .def_readonly("label", &ClassModel::label)
      .def_readonly("layers", &ClassModel::layers)
      .def_readwrite("params", &ClassModel::params)
      .def("param_count", &ClassModel::param_count)
      .def_static("with_stack", &ClassModel::with_stack, py::arg("label"), py::arg("layers"))
      .def_static("default_stack", &ClassModel::default_stack);

  py::class_<SwapTestResult>(m, "SwapTestResult")
      .def_readonly("p0", &SwapTestResult::p0)
      .def_readonly("fidelity", &SwapTestResult::fidelity);

  // --- noise ---
  py::class_<NoiseConfig>(m, "NoiseConfig")
      .def(py::init<>())
      .def_readwrite("p_depol_1q", &NoiseConfig::p_depol_1q)
      .def_readwrite("p_depol_2q", &NoiseConfig::p_depol_2q)
      .def_readwrite("gamma_amp", &NoiseConfig::gamma_amp)
      .def_readwrite("gamma_phase", &NoiseConfig::gamma_phase)
      .def_readwrite("coherent_z_rate", &NoiseConfig::coherent_z_rate)
      .def_readwrite("readout_flip", &NoiseConfig::readout_flip);

  py::class_<DDPolicy>(m, "DDPolicy")
      .def(py::init<>())
      .def_readwrite("enabled", &DDPolicy::enabled)
      .def_readwrite("sequence", &DDPolicy::sequence)
      .def_readwrite("min_idle_duration", &DDPolicy::min_idle_duration);

  m.def("noise_preset", &noise_preset, py::arg("name"));
  m.def("noise_preset_names", &noise_preset_names);
  m.def("run_noisy", &run_noisy, py::arg("circuit"), py::arg("config"));
  m.def("insert_dd", &insert_dd, py::arg("circuit"), py::arg("policy"));

  py::class_<Backend>(m, "Backend")
      .def_static("pure", &Backend::pure)
      .def_static("noisy", &Backend::noisy, py::arg("config"), py::arg("policy") = DDPolicy{});

  m.def("build_classifier_circuit", &build_classifier_circuit);
  m.def("swap_test", &swap_test, py::arg("model"), py::arg("input"),
        py::arg("backend") = Backend::pure());
  m.def("class_probabilities", &class_probabilities, py::arg("f3"), py::arg("f6"));
  m.def("predict", &predict, py::arg("input"), py::arg("model3"), py::arg("model6"),
        py::arg("backend") = Backend::pure());
  m.def("save_checkpoint", &save_checkpoint);
  m.def("load_checkpoint", &load_checkpoint);

  // --- train ---
  py::enum_<GradientMethod>(m, "GradientMethod")
      .value("PARAMETER_SHIFT", GradientMethod::ParameterShift)
      .value("FINITE_DIFFERENCE", GradientMethod::FiniteDifference);

  m.def("bce_loss", &bce_loss, py::arg("y"), py::arg("p"));
  m.def(
      "entropy", [](const std::vector<double>& p) { return entropy(p); }, py::arg("p"));
  m.def(
      "accuracy",
      [](const std::vector<int>& pred, const std::vector<int>& truth) {
        return accuracy(pred, truth);
      },
      py::arg("predictions"), py::arg("truths"));
  m.def("fidelity_gradient", &fidelity_gradient, py::arg("model"), py::arg("input"),
        py::arg("param_index"), py::arg("method") = GradientMethod::ParameterShift);
  m.def("mean_fidelity", &mean_fidelity, py::arg("model"), py::arg("samples"),
        py::arg("backend") = Backend::pure());

  // --- data ---
  py::class_<ImageSample>(m, "ImageSample")
      .def_readonly("pixels", &ImageSample::pixels)
      .def_readonly("label", &ImageSample::label);

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("samples", &Dataset::samples)
      .def_readonly("rows", &Dataset::rows)
      .def_readonly("cols", &Dataset::cols)
      .def("__len__", [](const Dataset& d) { return d.samples.size(); });

  py::class_<PcaModel>(m, "PcaModel")
      .def_readonly("mean", &PcaModel::mean)
      .def_readonly("components", &PcaModel::components)
      .def_readonly("eigenvalues", &PcaModel::eigenvalues)
      .def_readonly("total_variance", &PcaModel::total_variance)
      .def_readonly("feature_min", &PcaModel::feature_min)
      .def_readonly("feature_max", &PcaModel::feature_max);

  m.def(
      "parse_idx_images",
      [](py::bytes data) {
        const std::string_view view = data;
        return parse_idx_images(
            {reinterpret_cast<const std::uint8_t*>(view.data()), view.size()});
      },
      py::arg("data"));
  m.def(
      "parse_idx_labels",
      [](py::bytes data) {
        const std::string_view view = data;
        return parse_idx_labels(
            {reinterpret_cast<const std::uint8_t*>(view.data()), view.size()});
      },
      py::arg("data"));
  m.def("load_idx_dataset", &load_idx_dataset, py::arg("images_path"), py::arg("labels_path"));
  m.def("make_synthetic_dataset", &make_synthetic_dataset, py::arg("seed"), py::arg("n"));
  m.def(
      "fit_pca",
      [](const Dataset& ds, const std::vector<int>& indices) { return fit_pca(ds, indices); },
      py::arg("dataset"), py::arg("indices"));
  m.def(
      "project",
      [](const PcaModel& model, const std::vector<double>& pixels) {
        return project(model, pixels);
      },
      py::arg("model"), py::arg("pixels"));
  m.def(
      "normalize_for",
      [](EncodingMethod method, const std::vector<double>& features, const PcaModel& model,
         double rotation_range) {
        return normalize_for(method, to_array4(features, "normalize_for"), model,
                             rotation_range);
      },
      py::arg("method"), py::arg("features"), py::arg("model"),
      py::arg("rotation_range") = 3.14159265358979323846);

  // --- experiment ---
  py::enum_<Scenario>(m, "Scenario")
      .value("PURE_SIM", Scenario::PureSim)
      .value("NOISY_SIM", Scenario::NoisySim)
      .value("NOISY_SIM_DD", Scenario::NoisySimDD);

  py::class_<MetricsRecord>(m, "MetricsRecord")
      .def_readonly("epoch", &MetricsRecord::epoch)
      .def_readonly("class_phase", &MetricsRecord::class_phase)
      .def_readonly("accuracy", &MetricsRecord::accuracy)
      .def_readonly("loss", &MetricsRecord::loss)
      .def_readonly("entropy", &MetricsRecord::entropy)
      .def_readonly("wall_time_s", &MetricsRecord::wall_time_s);

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("run_name", &RunReport::run_name)
      .def_readonly("records", &RunReport::records)
      .def_readonly("final_accuracy", &RunReport::final_accuracy)
      .def_readonly("total_wall_time_s", &RunReport::total_wall_time_s)
      .def_readonly("metrics_csv", &RunReport::metrics_csv)
      .def_readonly("report_json", &RunReport::report_json);

  py::class_<TrainedRun>(m, "TrainedRun")
      .def_readonly("model3", &TrainedRun::model3)
      .def_readonly("model6", &TrainedRun::model6)
      .def_readonly("test_inputs", &TrainedRun::test_inputs)
      .def_readonly("test_labels", &TrainedRun::test_labels)
      .def_readonly("records", &TrainedRun::records);

  m.def(
      "run_experiment_file",
      [](const std::string& config_path) { return run_experiment(load_config(config_path).experiment); },
      py::arg("config_path"), "Run one experiment from a TOML config file.");
  m.def(
      "train_protocol_file",
      [](const std::string& config_path) { return train_protocol(load_config(config_path).experiment); },
      py::arg("config_path"),
      "Run the training protocol from a TOML config file; returns the trained "
      "models and encoded test split without writing artifacts.");
  m.def(
      "evaluate",
      [](const ClassModel& m3, const ClassModel& m6, const std::vector<EncodedInput>& inputs,
         const std::vector<int>& labels, const Backend& backend) {
        return evaluate(m3, m6, inputs, labels, backend);
      },
      py::arg("model3"), py::arg("model6"), py::arg("inputs"), py::arg("labels"),
      py::arg("backend") = Backend::pure());
  m.def("emit_plots", &emit_plots, py::arg("csv_paths"), py::arg("out_dir"));
}
