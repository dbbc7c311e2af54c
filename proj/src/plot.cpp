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

#include "qsc/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qsc/errors.hpp"

namespace fs = std::filesystem;

namespace qsc {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 400;
constexpr int kMarginLeft = 56;
constexpr int kMarginRight = 16;
constexpr int kMarginTop = 36;
constexpr int kMarginBottom = 44;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (const char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_field_double(const std::string& field, const std::string& path, int lineno) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(field, &pos);
    if (pos != field.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCategory::Parse,
                path + ":" + std::to_string(lineno) + ": not a number: '" + field + "'");
  }
}

struct Series {
  const char* name;
  const char* color;
  const std::vector<double>* values;
};

}  // namespace

MetricsSeries read_metrics_series(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw Error(ErrorCategory::Parse, "cannot open CSV '" + csv_path + "'");
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCategory::Parse, csv_path + ":1: empty file");
  }
  const auto header = split_csv_line(line);
  const std::vector<std::string> want = {"epoch", "class_phase",  "accuracy",
                                         "loss",  "entropy",      "wall_time_s"};
  if (std::vector<std::string>(header.begin(), header.end()) != want) {
    throw Error(ErrorCategory::Parse, csv_path + ":1: unexpected header '" + line + "'");
  }
  MetricsSeries series;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != want.size()) {
      throw Error(ErrorCategory::Parse, csv_path + ":" + std::to_string(lineno) + ": expected " +
                                            std::to_string(want.size()) + " fields, got " +
                                            std::to_string(fields.size()));
    }
    series.epochs.push_back(
        static_cast<int>(parse_field_double(fields[0], csv_path, lineno)));
    series.accuracy.push_back(parse_field_double(fields[2], csv_path, lineno));
    series.loss.push_back(parse_field_double(fields[3], csv_path, lineno));
    series.entropy.push_back(parse_field_double(fields[4], csv_path, lineno));
  }
  if (series.epochs.empty()) {
    throw Error(ErrorCategory::Parse, csv_path + ": no data rows");
  }
  return series;
}

std::string render_metrics_svg(const MetricsSeries& series, const std::string& title) {
  const std::size_t n = series.epochs.size();
  const double x_lo = series.epochs.front();
  const double x_hi = series.epochs.back();
  const double x_span = x_hi > x_lo ? x_hi - x_lo : 1.0;

  double y_hi = 1.0;
  for (const double v : series.loss) y_hi = std::max(y_hi, v);
  for (const double v : series.entropy) y_hi = std::max(y_hi, v);

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto sx = [&](double epoch) {
    return kMarginLeft + plot_w * (epoch - x_lo) / x_span;
  };
  const auto sy = [&](double v) { return kMarginTop + plot_h * (1.0 - v / y_hi); };

  char buf[128];
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">"
      << title << "</text>\n";

  // axes
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n", kMarginLeft,
                kMarginTop, kMarginLeft, kHeight - kMarginBottom);
  svg << buf;
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n", kMarginLeft,
                kHeight - kMarginBottom, kWidth - kMarginRight, kHeight - kMarginBottom);
  svg << buf;

  // y ticks at quarters
  for (int t = 0; t <= 4; ++t) {
    const double v = y_hi * t / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%.2f\" text-anchor=\"end\" font-family=\"sans-serif\" "
                  "font-size=\"10\">%.2f</text>\n",
                  kMarginLeft - 6, sy(v) + 3.0, v);
    svg << buf;
  }
  // x ticks per epoch (cap the label count for long runs)
  const std::size_t stride = std::max<std::size_t>(1, n / 12);
  for (std::size_t i = 0; i < n; i += stride) {
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%d\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                  "font-size=\"10\">%d</text>\n",
                  sx(series.epochs[i]), kHeight - kMarginBottom + 16, series.epochs[i]);
    svg << buf;
  }
  svg << "<text x=\"" << (kMarginLeft + static_cast<int>(plot_w) / 2) << "\" y=\""
      << (kHeight - 10) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << "epoch</text>\n";

  const Series all[3] = {{"accuracy", "#2166ac", &series.accuracy},
                         {"loss", "#b2182b", &series.loss},
                         {"entropy", "#1b7837", &series.entropy}};
  for (const Series& s : all) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", sx(series.epochs[i]),
                    sy((*s.values)[i]));
      svg << buf;
    }
    svg << "\"/>\n";
    for (std::size_t i = 0; i < n; ++i) {
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"%s\"/>\n",
                    sx(series.epochs[i]), sy((*s.values)[i]), s.color);
      svg << buf;
    }
  }

  // legend
  int ly = kMarginTop + 8;
  for (const Series& s : all) {
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%d\" y=\"%d\" width=\"10\" height=\"10\" fill=\"%s\"/>"
                  "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"11\">%s</text>\n",
                  kWidth - 120, ly, s.color, kWidth - 104, ly + 9, s.name);
    svg << buf;
    ly += 16;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::string> emit_plots(const std::vector<std::string>& csv_paths,
                                    const std::string& out_dir) {
  if (csv_paths.empty()) {
    throw Error(ErrorCategory::Config, "no CSV files given");
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorCategory::Data, "cannot create '" + out_dir + "': " + ec.message());
  }
  std::vector<std::string> written;
  for (const std::string& csv : csv_paths) {
    const MetricsSeries series = read_metrics_series(csv);
    fs::path name = fs::path(csv).filename();
    // metrics.csv lives in a per-run directory; use that directory's name
    if (name.stem() == "metrics" && fs::path(csv).has_parent_path()) {
      const fs::path parent = fs::path(csv).parent_path().filename();
      if (!parent.empty()) name = parent;
    }
    const fs::path out_path = fs::path(out_dir) / (name.stem().string() + ".svg");
    const std::string svg = render_metrics_svg(series, name.stem().string());
    std::ofstream out(out_path);
    if (!out) throw Error(ErrorCategory::Data, "cannot write '" + out_path.string() + "'");
    out << svg;
    written.push_back(out_path.string());
  }
  return written;
}

}  // namespace qsc
