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

#include "qsc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qsc/errors.hpp"

namespace fs = std::filesystem;

namespace qsc {

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::PureSim: return "pure";
    case Scenario::NoisySim: return "noisy";
    case Scenario::NoisySimDD: return "noisy_dd";
  }
  return "?";
}

Scenario scenario_from_string(const std::string& name) {
  if (name == "pure") return Scenario::PureSim;
  if (name == "noisy") return Scenario::NoisySim;
  if (name == "noisy_dd") return Scenario::NoisySimDD;
  throw Error(ErrorCategory::Config, "unknown scenario '" + name + "'");
}

std::string ExperimentConfig::effective_run_name() const {
  if (!run_name.empty()) return run_name;
  return std::string(to_string(encoding)) + "_" + to_string(scenario) + "_seed" +
         std::to_string(seed);
}

// ---------------------------------------------------------------------------
// config file

namespace {

struct ConfigFile {
  struct Entry {
    std::string raw;
    int line = 0;
    bool quoted = false;
  };
  std::string path;
  std::map<std::string, Entry> entries;
  mutable std::set<std::string> consumed;

  bool has(const std::string& key) const { return entries.count(key) != 0; }

  const Entry* find(const std::string& key) const {
    auto it = entries.find(key);
    if (it == entries.end()) return nullptr;
    consumed.insert(key);
    return &it->second;
  }

  [[noreturn]] void fail(const Entry& e, const std::string& key, const std::string& want) const {
    throw Error(ErrorCategory::Config, path + ":" + std::to_string(e.line) + ": key '" + key +
                                           "' wants " + want + ", got '" + e.raw + "'");
  }

  std::string get_string(const std::string& key, const std::string& fallback) const {
    const Entry* e = find(key);
    if (e == nullptr) return fallback;
    if (!e->quoted) fail(*e, key, "a quoted string");
    return e->raw;
  }

  bool get_bool(const std::string& key, bool fallback) const {
    const Entry* e = find(key);
    if (e == nullptr) return fallback;
    if (e->raw == "true" && !e->quoted) return true;
    if (e->raw == "false" && !e->quoted) return false;
    fail(*e, key, "true or false");
  }

  double get_double(const std::string& key, double fallback) const {
    const Entry* e = find(key);
    if (e == nullptr) return fallback;
    try {
      std::size_t pos = 0;
      const double v = std::stod(e->raw, &pos);
      if (pos != e->raw.size() || e->quoted) fail(*e, key, "a number");
      return v;
    } catch (const std::invalid_argument&) {
      fail(*e, key, "a number");
    } catch (const std::out_of_range&) {
      fail(*e, key, "a representable number");
    }
  }

  long long get_int(const std::string& key, long long fallback) const {
    const Entry* e = find(key);
    if (e == nullptr) return fallback;
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(e->raw, &pos);
      if (pos != e->raw.size() || e->quoted) fail(*e, key, "an integer");
      return v;
    } catch (const std::invalid_argument&) {
      fail(*e, key, "an integer");
    } catch (const std::out_of_range&) {
      fail(*e, key, "a representable integer");
    }
  }

  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const {
    const Entry* e = find(key);
    if (e == nullptr) return fallback;
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(e->raw, &pos);
      if (pos != e->raw.size() || e->quoted) fail(*e, key, "a nonnegative integer");
      return v;
    } catch (const std::invalid_argument&) {
      fail(*e, key, "a nonnegative integer");
    } catch (const std::out_of_range&) {
      fail(*e, key, "a representable integer");
    }
  }

  void reject_unconsumed() const {
    for (const auto& [key, entry] : entries) {
      if (consumed.count(key) == 0) {
        throw Error(ErrorCategory::Config,
                    path + ":" + std::to_string(entry.line) + ": unknown key '" + key + "'");
      }
    }
  }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

ConfigFile parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::Config, "cannot open config file '" + path + "'");
  ConfigFile cf;
  cf.path = path;
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      // keep # inside quotes
      const auto quote1 = line.find('"');
      if (quote1 == std::string::npos || hash < quote1) line.erase(hash);
    }
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw Error(ErrorCategory::Config,
                    path + ":" + std::to_string(lineno) + ": unterminated section header");
      }
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty()) {
        throw Error(ErrorCategory::Config,
                    path + ":" + std::to_string(lineno) + ": empty section name");
      }
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCategory::Config,
                  path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw Error(ErrorCategory::Config,
                  path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    ConfigFile::Entry entry;
    entry.line = lineno;
    if (value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') {
        throw Error(ErrorCategory::Config,
                    path + ":" + std::to_string(lineno) + ": unterminated string");
      }
      entry.quoted = true;
      entry.raw = value.substr(1, value.size() - 2);
      if (entry.raw.find('"') != std::string::npos) {
        throw Error(ErrorCategory::Config,
                    path + ":" + std::to_string(lineno) + ": embedded quotes are not supported");
      }
    } else {
      entry.raw = value;
    }
    const std::string full_key = section.empty() ? key : section + "." + key;
    if (cf.entries.count(full_key) != 0) {
      throw Error(ErrorCategory::Config,
                  path + ":" + std::to_string(lineno) + ": duplicate key '" + full_key + "'");
    }
    cf.entries[full_key] = entry;
  }
  return cf;
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream iss(s);
  std::vector<std::string> words;
  std::string w;
  while (iss >> w) words.push_back(w);
  return words;
}

std::vector<GateKind> parse_dd_sequence(const std::string& s) {
  std::vector<GateKind> seq;
  for (const char ch : s) {
    switch (ch) {
      case 'X': seq.push_back(GateKind::X); break;
      case 'Y': seq.push_back(GateKind::Y); break;
      case 'Z': seq.push_back(GateKind::Z); break;
      case 'H': seq.push_back(GateKind::H); break;
      default:
        throw Error(ErrorCategory::Config,
                    std::string("DD sequence letters must be X/Y/Z/H, got '") + ch + "'");
    }
  }
  return seq;
}

const std::vector<std::string> kNoiseFieldNames = {"p_depol_1q",      "p_depol_2q", "gamma_amp",
                                                   "gamma_phase",     "coherent_z_rate",
                                                   "readout_flip"};

void apply_noise_override(NoiseConfig& cfg, const std::string& field, double value) {
  if (field == "p_depol_1q") cfg.p_depol_1q = value;
  else if (field == "p_depol_2q") cfg.p_depol_2q = value;
  else if (field == "gamma_amp") cfg.gamma_amp = value;
  else if (field == "gamma_phase") cfg.gamma_phase = value;
  else if (field == "coherent_z_rate") cfg.coherent_z_rate = value;
  else if (field == "readout_flip") cfg.readout_flip = value;
  else throw Error(ErrorCategory::Config, "unknown noise field '" + field + "'");
}

}  // namespace

FullConfig load_config(const std::string& path) {
  const ConfigFile cf = parse_config_file(path);
  FullConfig full;
  ExperimentConfig& c = full.experiment;

  c.encoding = encoding_from_string(cf.get_string("encoding", to_string(c.encoding)));
  c.scenario = scenario_from_string(cf.get_string("scenario", to_string(c.scenario)));
  c.seed = cf.get_u64("seed", c.seed);
  c.rotation_range = cf.get_double("rotation_range", c.rotation_range);
  if (!(c.rotation_range > 0.0)) {
    throw Error(ErrorCategory::Config, "rotation_range must be positive");
  }
  c.run_name = cf.get_string("run_name", "");
  if (cf.has("layers")) {
    c.layers.clear();
    for (const std::string& tok : split_words(cf.get_string("layers", ""))) {
      c.layers.push_back(LayerSpec::from_token(tok));
    }
    if (c.layers.empty()) throw Error(ErrorCategory::Config, "layers must not be empty");
  }

  c.train.learning_rate = cf.get_double("train.learning_rate", c.train.learning_rate);
  c.train.epochs_per_class =
      static_cast<int>(cf.get_int("train.epochs_per_class", c.train.epochs_per_class));
  c.train.batch_size = static_cast<int>(cf.get_int("train.batch_size", c.train.batch_size));
  c.train.gradient_method = gradient_method_from_string(
      cf.get_string("train.gradient_method", to_string(c.train.gradient_method)));
  c.train.validate();

  c.data.dir = cf.get_string("data.dir", c.data.dir);
  c.data.images_file = cf.get_string("data.images_file", c.data.images_file);
  c.data.labels_file = cf.get_string("data.labels_file", c.data.labels_file);
  c.data.synthetic = cf.get_bool("data.synthetic", c.data.synthetic);
  c.data.synthetic_n = static_cast<int>(cf.get_int("data.synthetic_n", c.data.synthetic_n));
  c.data.synthetic_seed = cf.get_u64("data.synthetic_seed", c.data.synthetic_seed);
  c.data.n_train = static_cast<int>(cf.get_int("data.n_train", c.data.n_train));
  c.data.n_test = static_cast<int>(cf.get_int("data.n_test", c.data.n_test));
  c.data.pca_pool_other =
      static_cast<int>(cf.get_int("data.pca_pool_other", c.data.pca_pool_other));

  c.noise_preset = cf.get_string("noise.preset", c.noise_preset);
  for (const std::string& field : kNoiseFieldNames) {
    const std::string key = "noise." + field;
    if (cf.has(key)) c.noise_overrides[field] = cf.get_double(key, 0.0);
  }

  if (cf.has("dd.sequence")) {
    c.dd.sequence = parse_dd_sequence(cf.get_string("dd.sequence", "XX"));
  }
  c.dd.min_idle_duration = cf.get_double("dd.min_idle_duration", c.dd.min_idle_duration);

  c.output.dir = cf.get_string("output.dir", c.output.dir);
  c.output.timing = cf.get_bool("output.timing", c.output.timing);

  GridOptions& g = full.grid;
  if (cf.has("grid.encodings")) {
    g.encodings.clear();
    for (const std::string& tok : split_words(cf.get_string("grid.encodings", ""))) {
      g.encodings.push_back(encoding_from_string(tok));
    }
    if (g.encodings.empty()) throw Error(ErrorCategory::Config, "grid.encodings must not be empty");
  }
  if (cf.has("grid.scenarios")) {
    g.scenarios.clear();
    for (const std::string& tok : split_words(cf.get_string("grid.scenarios", ""))) {
      g.scenarios.push_back(scenario_from_string(tok));
    }
    if (g.scenarios.empty()) throw Error(ErrorCategory::Config, "grid.scenarios must not be empty");
  }
  g.repeats = static_cast<int>(cf.get_int("grid.repeats", g.repeats));
  g.jobs = static_cast<int>(cf.get_int("grid.jobs", g.jobs));
  if (g.repeats < 1) throw Error(ErrorCategory::Config, "grid.repeats must be >= 1");
  if (g.jobs < 1) throw Error(ErrorCategory::Config, "grid.jobs must be >= 1");

  cf.reject_unconsumed();
  return full;
}

NoiseConfig resolve_noise(const ExperimentConfig& config) {
  NoiseConfig noise = noise_preset(config.noise_preset);
  for (const auto& [field, value] : config.noise_overrides) {
    apply_noise_override(noise, field, value);
  }
  noise.validate();
  return noise;
}

Backend make_backend(const ExperimentConfig& config) {
  if (config.scenario == Scenario::PureSim) return Backend::pure();
  DDPolicy dd = config.dd;
  dd.enabled = config.scenario == Scenario::NoisySimDD;
  if (dd.enabled) dd.validate();
  return Backend::noisy(resolve_noise(config), dd);
}

// ---------------------------------------------------------------------------
// run_experiment

namespace {

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["encoding"] = to_string(c.encoding);
  j["scenario"] = to_string(c.scenario);
  j["seed"] = c.seed;
  j["rotation_range"] = c.rotation_range;
  std::string layer_tokens;
  for (const LayerSpec& l : c.layers) {
    if (!layer_tokens.empty()) layer_tokens += ' ';
    layer_tokens += l.token();
  }
  j["layers"] = layer_tokens;
  j["train"] = {{"learning_rate", c.train.learning_rate},
                {"epochs_per_class", c.train.epochs_per_class},
                {"batch_size", c.train.batch_size},
                {"gradient_method", to_string(c.train.gradient_method)}};
  j["data"] = {{"dir", c.data.dir},
               {"images_file", c.data.images_file},
               {"labels_file", c.data.labels_file},
               {"synthetic", c.data.synthetic},
               {"synthetic_n", c.data.synthetic_n},
               {"synthetic_seed", c.data.synthetic_seed},
               {"n_train", c.data.n_train},
               {"n_test", c.data.n_test},
               {"pca_pool_other", c.data.pca_pool_other}};
  j["noise_preset"] = c.noise_preset;
  j["noise_overrides"] = c.noise_overrides;
  std::string dd_seq;
  for (const GateKind k : c.dd.sequence) dd_seq += to_string(k);
  j["dd"] = {{"sequence", dd_seq}, {"min_idle_duration", c.dd.min_idle_duration}};
  j["output"] = {{"dir", c.output.dir}, {"timing", c.output.timing}};
  return j;
}

struct PreparedData {
  std::vector<EncodedInput> train3;
  std::vector<EncodedInput> train6;
  std::vector<EncodedInput> test_inputs;
  std::vector<int> test_labels;
};

PreparedData prepare_data(const ExperimentConfig& config, const Dataset& dataset, Rng& rng_split,
                          Rng& rng_pool) {
  const TwoClassSplit split =
      split_two_class(dataset, 3, 6, config.data.n_train, config.data.n_test, rng_split);
  const std::vector<int> pool =
      pca_pool_indices(dataset, split.train, 3, 6, config.data.pca_pool_other, rng_pool);

  PcaModel pca = fit_pca(dataset, pool);
  PixelView train_view;
  train_view.reserve(split.train.size());
  for (const int i : split.train) {
    train_view.push_back(&dataset.samples[static_cast<std::size_t>(i)].pixels);
  }
  fit_feature_ranges(pca, train_view);

  PreparedData out;
  for (const int i : split.train) {
    const ImageSample& s = dataset.samples[static_cast<std::size_t>(i)];
    const EncodedInput input =
        normalize_for(config.encoding, project(pca, s.pixels), pca, config.rotation_range);
    (s.label == 3 ? out.train3 : out.train6).push_back(input);
  }
  for (const int i : split.test) {
    const ImageSample& s = dataset.samples[static_cast<std::size_t>(i)];
    out.test_inputs.push_back(
        normalize_for(config.encoding, project(pca, s.pixels), pca, config.rotation_range));
    out.test_labels.push_back(s.label);
  }
  return out;
}

}  // namespace

TrainedRun train_protocol(const ExperimentConfig& config,
                          const std::function<void(const ClassModel&)>* on_epoch_model) {
  config.train.validate();
  if (config.data.n_train < 2 || config.data.n_test < 1) {
    throw Error(ErrorCategory::Config, "data.n_train/n_test too small");
  }
  fs::path images_path;
  fs::path labels_path;
  if (!config.data.synthetic) {
    if (config.data.dir.empty()) {
      throw Error(ErrorCategory::Config, "data.dir is not set (and data.synthetic is false)");
    }
    images_path = fs::path(config.data.dir) / config.data.images_file;
    labels_path = fs::path(config.data.dir) / config.data.labels_file;
    if (!fs::exists(images_path) || !fs::exists(labels_path)) {
      throw Error(ErrorCategory::Config,
                  "dataset files missing under '" + config.data.dir + "'");
    }
  }
  const Backend backend = make_backend(config);  // fails fast on bad preset/policy

  const Dataset dataset =
      config.data.synthetic
          ? make_synthetic_dataset(config.data.synthetic_seed, config.data.synthetic_n)
          : load_idx_dataset(images_path.string(), labels_path.string());

  Rng master(config.seed);
  Rng rng_split = master.derive(1);
  Rng rng_pool = master.derive(2);
  Rng rng_init = master.derive(3);
  Rng rng_train3 = master.derive(4);
  Rng rng_train6 = master.derive(5);

  PreparedData data = prepare_data(config, dataset, rng_split, rng_pool);

  TrainedRun run;
  run.model3 = ClassModel::with_stack(3, config.layers);
  run.model6 = ClassModel::with_stack(6, config.layers);
  for (double& p : run.model3.params) {
    p = rng_init.uniform(0.0, 6.283185307179586476925286766559);
  }
  for (double& p : run.model6.params) {
    p = rng_init.uniform(0.0, 6.283185307179586476925286766559);
  }
  run.test_inputs = std::move(data.test_inputs);
  run.test_labels = std::move(data.test_labels);

  TrainConfig train_cfg = config.train;
  train_cfg.seed = config.seed;

  const EpochCallback on_epoch3 = [&](int) {
    if (on_epoch_model != nullptr) (*on_epoch_model)(run.model3);
    return evaluate(run.model3, run.model6, run.test_inputs, run.test_labels, backend);
  };
  const EpochCallback on_epoch6 = [&](int) {
    if (on_epoch_model != nullptr) (*on_epoch_model)(run.model6);
    return evaluate(run.model3, run.model6, run.test_inputs, run.test_labels, backend);
  };

  run.records = train_class(run.model3, data.train3, train_cfg, rng_train3, &on_epoch3, 0);
  const auto records6 = train_class(run.model6, data.train6, train_cfg, rng_train6, &on_epoch6,
                                    train_cfg.epochs_per_class);
  run.records.insert(run.records.end(), records6.begin(), records6.end());
  return run;
}

RunReport run_experiment(const ExperimentConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();

  // Fail on bad inputs before any output file is created.
  RunReport report;
  report.run_name = config.effective_run_name();
  const fs::path run_dir = fs::path(config.output.dir) / report.run_name;
  report.metrics_csv = (run_dir / "metrics.csv").string();
  report.checkpoint3 = (run_dir / "model3.txt").string();
  report.checkpoint6 = (run_dir / "model6.txt").string();
  report.report_json = (run_dir / "report.json").string();

  bool dir_ready = false;
  const std::function<void(const ClassModel&)> checkpoint = [&](const ClassModel& model) {
    if (!dir_ready) {
      std::error_code ec;
      fs::create_directories(run_dir, ec);
      if (ec) {
        throw Error(ErrorCategory::Data, "cannot create output directory '" + run_dir.string() +
                                             "': " + ec.message());
      }
      dir_ready = true;
    }
    save_checkpoint(model, model.label == 3 ? report.checkpoint3 : report.checkpoint6);
  };

  const TrainedRun run = train_protocol(config, &checkpoint);
  report.records = run.records;
  report.final_accuracy = report.records.back().accuracy;
  report.total_wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  write_metrics_csv(report.metrics_csv, report.records, config.output.timing);

  nlohmann::json j;
  j["run_name"] = report.run_name;
  j["config"] = config_to_json(config);
  j["final_accuracy"] = report.final_accuracy;
  j["total_wall_time_s"] = report.total_wall_time_s;
  j["artifacts"] = {{"metrics_csv", report.metrics_csv},
                    {"checkpoint3", report.checkpoint3},
                    {"checkpoint6", report.checkpoint6}};
  auto& recs = j["records"] = nlohmann::json::array();
  for (const MetricsRecord& r : report.records) {
    recs.push_back({{"epoch", r.epoch},
                    {"class_phase", r.class_phase},
                    {"accuracy", r.accuracy},
                    {"loss", r.loss},
                    {"entropy", r.entropy},
                    {"wall_time_s", r.wall_time_s}});
  }
  std::ofstream out(report.report_json);
  if (!out) throw Error(ErrorCategory::Data, "cannot write '" + report.report_json + "'");
  out << j.dump(2) << "\n";
  return report;
}

// ---------------------------------------------------------------------------
// run_grid

GridResult run_grid(const ExperimentConfig& base, const GridOptions& options) {
  if (options.encodings.empty() || options.scenarios.empty()) {
    throw Error(ErrorCategory::Config, "grid wants at least one encoding and one scenario");
  }

  struct Job {
    ExperimentConfig config;
    std::size_t slot;
  };
  std::vector<Job> jobs;
  std::vector<GridCellResult> cells;
  std::size_t cell_index = 0;
  for (const Scenario scenario : options.scenarios) {
    for (const EncodingMethod encoding : options.encodings) {
      for (int repeat = 0; repeat < options.repeats; ++repeat) {
        ExperimentConfig cfg = base;
        cfg.encoding = encoding;
        cfg.scenario = scenario;
        cfg.seed = base.seed + cell_index + 1000ull * static_cast<unsigned>(repeat);
        cfg.run_name.clear();  // per-cell default name
        GridCellResult cell;
        cell.encoding = encoding;
        cell.scenario = scenario;
        cell.repeat = repeat;
        cell.run_name = cfg.effective_run_name();
        jobs.push_back({std::move(cfg), cells.size()});
        cells.push_back(std::move(cell));
      }
      ++cell_index;
    }
  }

  const auto run_one = [&cells](const Job& job) {
    GridCellResult& cell = cells[job.slot];
    try {
      const RunReport report = run_experiment(job.config);
      cell.ok = true;
      cell.accuracy = report.final_accuracy;
    } catch (const std::exception& e) {
      cell.ok = false;
      cell.error = e.what();
    }
  };

  const int workers = std::min<int>(options.jobs, static_cast<int>(jobs.size()));
  if (workers <= 1) {
    for (const Job& job : jobs) run_one(job);
  } else {
    std::vector<std::thread> threads;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&]() {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= jobs.size()) return;
          run_one(jobs[i]);
        }
      });
    }
    for (std::thread& t : threads) t.join();
  }

  // Summary table: scenarios as rows, encodings as columns.
  const fs::path summary_path = fs::path(base.output.dir) / "grid_summary.csv";
  std::error_code ec;
  fs::create_directories(base.output.dir, ec);
  std::ofstream out(summary_path);
  if (!out) {
    throw Error(ErrorCategory::Data, "cannot write '" + summary_path.string() + "'");
  }
  out << "scenario";
  for (const EncodingMethod e : options.encodings) out << ',' << to_string(e);
  out << '\n';
  char buf[64];
  for (const Scenario scenario : options.scenarios) {
    out << to_string(scenario);
    for (const EncodingMethod encoding : options.encodings) {
      std::vector<double> values;
      bool failed = false;
      for (const GridCellResult& cell : cells) {
        if (cell.scenario != scenario || cell.encoding != encoding) continue;
        if (!cell.ok) {
          failed = true;
        } else {
          values.push_back(cell.accuracy);
        }
      }
      if (failed || values.empty()) {
        out << ",error";
        continue;
      }
      if (values.size() == 1) {
        std::snprintf(buf, sizeof buf, ",%.6f", values[0]);
        out << buf;
      } else {
        double mean = 0.0;
        double lo = values[0];
        double hi = values[0];
        for (const double v : values) {
          mean += v;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        mean /= static_cast<double>(values.size());
        std::snprintf(buf, sizeof buf, ",%.6f±%.6f", mean, (hi - lo) / 2.0);
        out << buf;
      }
    }
    out << '\n';
  }
  out.close();

  GridResult result;
  result.cells = std::move(cells);
  result.summary_csv = summary_path.string();
  return result;
}

}  // namespace qsc
