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

#include <string>
#include <vector>

namespace qsc {

struct MetricsSeries {
  std::vector<int> epochs;
  std::vector<double> accuracy;
  std::vector<double> loss;
  std::vector<double> entropy;
};

// Reads a metrics CSV produced by write_metrics_csv; malformed content throws
// a parse error naming the offending line.
MetricsSeries read_metrics_series(const std::string& csv_path);

// Accuracy/loss/entropy vs epoch as one SVG document. Output depends only on
// the series and the title, with fixed number formatting.
std::string render_metrics_svg(const MetricsSeries& series, const std::string& title);

// One SVG per CSV, named after the CSV stem, written into out_dir.
// Returns the paths written.
std::vector<std::string> emit_plots(const std::vector<std::string>& csv_paths,
                                    const std::string& out_dir);

}  // namespace qsc
