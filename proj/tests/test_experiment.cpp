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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qsc/errors.hpp"
#include "qsc/experiment.hpp"
#include "qsc/plot.hpp"

using namespace qsc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("qsc_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

// Small synthetic-data experiment that runs in well under a second.
ExperimentConfig mini_config(const fs::path& out_dir) {
  ExperimentConfig cfg;
  cfg.encoding = EncodingMethod::Rotation;
  cfg.scenario = Scenario::PureSim;
  cfg.seed = 7;
  cfg.data.synthetic = true;
  cfg.data.synthetic_n = 160;
  cfg.data.n_train = 80;
  cfg.data.n_test = 40;
  cfg.data.pca_pool_other = 0;
  cfg.train.epochs_per_class = 2;
  cfg.train.batch_size = 4;
  cfg.output.dir = out_dir.string();
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("experiment");

TEST_CASE("config file parsing") {
  TempDir tmp("config");
  SUBCASE("full round trip") {
    write_file(tmp.path / "exp.toml", R"(# experiment configuration
encoding = "amplitude"
scenario = "noisy_dd"
seed = 99
rotation_range = 6.283185307179586
layers = "dual cry single"

[train]
learning_rate = 0.02
epochs_per_class = 3
batch_size = 8
gradient_method = "finite_difference"

[data]
synthetic = true
synthetic_n = 64
n_train = 32
n_test = 16
pca_pool_other = 0

[noise]
preset = "legacy_like"
p_depol_1q = 0.004   # override one preset field

[dd]
sequence = "XX"
min_idle_duration = 2.0

[output]
dir = "results"
timing = true

[grid]
encodings = "basis rotation"
scenarios = "pure noisy"
repeats = 2
jobs = 2
)");
    const FullConfig full = load_config((tmp.path / "exp.toml").string());
    const ExperimentConfig& c = full.experiment;
    CHECK(c.encoding == EncodingMethod::Amplitude);
    CHECK(c.scenario == Scenario::NoisySimDD);
    CHECK(c.seed == 99);
    CHECK(c.layers.size() == 3);
    CHECK(c.layers[1].entangler == Entangler::CRY);
    CHECK(c.train.learning_rate == doctest::Approx(0.02));
    CHECK(c.train.epochs_per_class == 3);
    CHECK(c.train.batch_size == 8);
    CHECK(c.train.gradient_method == GradientMethod::FiniteDifference);
    CHECK(c.data.synthetic);
    CHECK(c.noise_preset == "legacy_like");
    const NoiseConfig noise = resolve_noise(c);
    CHECK(noise.p_depol_1q == doctest::Approx(0.004));  // override wins
    CHECK(noise.p_depol_2q == doctest::Approx(noise_preset("legacy_like").p_depol_2q));
    CHECK(c.dd.min_idle_duration == doctest::Approx(2.0));
    CHECK(c.output.timing);
    CHECK(full.grid.encodings.size() == 2);
    CHECK(full.grid.scenarios.size() == 2);
    CHECK(full.grid.repeats == 2);
    CHECK(full.grid.jobs == 2);
  }
  SUBCASE("unknown keys are rejected") {
    write_file(tmp.path / "typo.toml", "encodng = \"rotation\"\n");
    CHECK_THROWS_AS(load_config((tmp.path / "typo.toml").string()), Error);
    try {
      load_config((tmp.path / "typo.toml").string());
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::Config);
      CHECK(std::string(e.what()).find(":1:") != std::string::npos);
    }
  }
  SUBCASE("type errors carry the line number") {
    write_file(tmp.path / "bad.toml", "seed = 1\n\n[train]\nbatch_size = \"many\"\n");
    try {
      load_config((tmp.path / "bad.toml").string());
      FAIL("expected a config error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find(":4:") != std::string::npos);
    }
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_config((tmp.path / "absent.toml").string()), Error);
  }
  SUBCASE("malformed lines") {
    write_file(tmp.path / "m1.toml", "just some words\n");
    CHECK_THROWS_AS(load_config((tmp.path / "m1.toml").string()), Error);
    write_file(tmp.path / "m2.toml", "[unclosed\n");
    CHECK_THROWS_AS(load_config((tmp.path / "m2.toml").string()), Error);
    write_file(tmp.path / "m3.toml", "s = \"unterminated\n");
    CHECK_THROWS_AS(load_config((tmp.path / "m3.toml").string()), Error);
  }
}

TEST_CASE("run_experiment on synthetic data") {
  TempDir tmp("run");
  const ExperimentConfig cfg = mini_config(tmp.path / "out");
  const RunReport report = run_experiment(cfg);

  SUBCASE("artifacts exist") {
    CHECK(fs::exists(report.metrics_csv));
    CHECK(fs::exists(report.checkpoint3));
    CHECK(fs::exists(report.checkpoint6));
    CHECK(fs::exists(report.report_json));
  }
  SUBCASE("final accuracy equals the last record") {
    REQUIRE(report.records.size() == 4);  // 2 epochs x 2 phases
    CHECK(report.final_accuracy == report.records.back().accuracy);
    CHECK(report.records[0].class_phase == 3);
    CHECK(report.records[3].class_phase == 6);
    CHECK(report.records[3].epoch == 4);
  }
  SUBCASE("checkpoints load back") {
    const ClassModel m3 = load_checkpoint(report.checkpoint3);
    const ClassModel m6 = load_checkpoint(report.checkpoint6);
    CHECK(m3.label == 3);
    CHECK(m6.label == 6);
    CHECK(m3.param_count() == 6);
  }
  SUBCASE("deterministic: the same config gives byte-identical CSV") {
    ExperimentConfig cfg2 = mini_config(tmp.path / "out2");
    const RunReport second = run_experiment(cfg2);
    CHECK(slurp(report.metrics_csv) == slurp(second.metrics_csv));
  }
  SUBCASE("a different seed changes the CSV") {
    ExperimentConfig cfg3 = mini_config(tmp.path / "out3");
    cfg3.seed = 8;
    const RunReport third = run_experiment(cfg3);
    CHECK(slurp(report.metrics_csv) != slurp(third.metrics_csv));
  }
}

TEST_CASE("missing data directory fails before any output is written") {
  TempDir tmp("missing");
  ExperimentConfig cfg = mini_config(tmp.path / "out");
  cfg.data.synthetic = false;
  cfg.data.dir = (tmp.path / "nonexistent").string();
  CHECK_THROWS_AS(run_experiment(cfg), Error);
  try {
    run_experiment(cfg);
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Config);
  }
  CHECK_FALSE(fs::exists(tmp.path / "out"));
}

TEST_CASE("noisy scenario smoke run stays deterministic") {
  TempDir tmp("noisy");
  ExperimentConfig cfg = mini_config(tmp.path / "out");
  cfg.scenario = Scenario::NoisySimDD;
  cfg.noise_preset = "torino_like";
  cfg.data.synthetic_n = 80;
  cfg.data.n_train = 40;
  cfg.data.n_test = 12;
  cfg.train.epochs_per_class = 1;
  const RunReport a = run_experiment(cfg);
  cfg.output.dir = (tmp.path / "out2").string();
  const RunReport b = run_experiment(cfg);
  CHECK(slurp(a.metrics_csv) == slurp(b.metrics_csv));
  CHECK(a.final_accuracy == b.final_accuracy);
}

TEST_CASE("run_grid") {
  TempDir tmp("grid");
  ExperimentConfig base = mini_config(tmp.path / "out");
  base.train.epochs_per_class = 1;
  base.data.synthetic_n = 100;
  base.data.n_train = 48;
  base.data.n_test = 16;
  GridOptions grid;
  grid.encodings = {EncodingMethod::Rotation, EncodingMethod::Amplitude};
  grid.scenarios = {Scenario::PureSim};

  SUBCASE("summary matches the per-cell reports") {
    const GridResult result = run_grid(base, grid);
    REQUIRE(result.cells.size() == 2);
    for (const GridCellResult& cell : result.cells) CHECK(cell.ok);
    const std::string summary = slurp(result.summary_csv);
    CHECK(summary.find("scenario,rotation,amplitude") == 0);
    char want[64];
    std::snprintf(want, sizeof want, "%.6f", result.cells[0].accuracy);
    CHECK(summary.find(want) != std::string::npos);
  }
  SUBCASE("identical grid runs are byte-identical, across thread counts") {
    const GridResult a = run_grid(base, grid);
    const std::string csv_a = slurp(a.summary_csv);
    ExperimentConfig base2 = base;
    base2.output.dir = (tmp.path / "outB").string();
    GridOptions grid2 = grid;
    grid2.jobs = 4;
    const GridResult b = run_grid(base2, grid2);
    CHECK(csv_a == slurp(b.summary_csv));
  }
  SUBCASE("one failing cell does not abort the others") {
    ExperimentConfig base3 = base;
    base3.output.dir = (tmp.path / "outC").string();
    base3.noise_preset = "no_such_preset";  // only noisy cells resolve presets
    GridOptions grid3 = grid;
    grid3.scenarios = {Scenario::PureSim, Scenario::NoisySim};
    const GridResult result = run_grid(base3, grid3);
    REQUIRE(result.cells.size() == 4);
    int ok = 0;
    int failed = 0;
    for (const GridCellResult& cell : result.cells) {
      if (cell.ok) {
        ++ok;
      } else {
        ++failed;
        CHECK(cell.scenario == Scenario::NoisySim);
      }
    }
    CHECK(ok == 2);
    CHECK(failed == 2);
    CHECK(slurp(result.summary_csv).find("error") != std::string::npos);
  }
  SUBCASE("empty grid is a usage error") {
    GridOptions empty;
    empty.encodings.clear();
    CHECK_THROWS_AS(run_grid(base, empty), Error);
  }
}

TEST_CASE("plots") {
  TempDir tmp("plot");
  const ExperimentConfig cfg = mini_config(tmp.path / "out");
  const RunReport report = run_experiment(cfg);

  SUBCASE("SVG has three series with one point per epoch") {
    const auto written = emit_plots({report.metrics_csv}, (tmp.path / "plots").string());
    REQUIRE(written.size() == 1);
    const std::string svg = slurp(written[0]);
    std::size_t polylines = 0;
    for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) {
      ++polylines;
    }
    CHECK(polylines == 3);
    std::size_t circles = 0;
    for (std::size_t pos = 0; (pos = svg.find("<circle", pos)) != std::string::npos; ++pos) {
      ++circles;
    }
    CHECK(circles == 3 * report.records.size());
  }
  SUBCASE("identical CSVs give identical SVGs") {
    const auto a = emit_plots({report.metrics_csv}, (tmp.path / "p1").string());
    const auto b = emit_plots({report.metrics_csv}, (tmp.path / "p2").string());
    CHECK(slurp(a[0]) == slurp(b[0]));
  }
  SUBCASE("single-epoch CSV still renders") {
    const fs::path csv = tmp.path / "one.csv";
    write_file(csv,
               "epoch,class_phase,accuracy,loss,entropy,wall_time_s\n"
               "1,3,0.500000,0.693147,0.693147,0.000\n");
    const auto written = emit_plots({csv.string()}, (tmp.path / "p3").string());
    const std::string svg = slurp(written[0]);
    CHECK(svg.find("<svg") != std::string::npos);
  }
  SUBCASE("malformed CSV names the offending line") {
    const fs::path csv = tmp.path / "bad.csv";
    write_file(csv,
               "epoch,class_phase,accuracy,loss,entropy,wall_time_s\n"
               "1,3,0.5,0.6,0.7,0.0\n"
               "2,3,not_a_number,0.6,0.7,0.0\n");
    try {
      emit_plots({csv.string()}, (tmp.path / "p4").string());
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::Parse);
      CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }
  }
  SUBCASE("empty path list is an error") {
    CHECK_THROWS_AS(emit_plots({}, (tmp.path / "p5").string()), Error);
  }
}

TEST_SUITE_END();
