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

#include "qsc/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>

#include "qsc/errors.hpp"

namespace qsc {

namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  if (offset + 4 > bytes.size()) {
    throw Error(ErrorCategory::Parse,
                "unexpected end of IDX data at byte " + std::to_string(bytes.size()) +
                    " (wanted 4 bytes at offset " + std::to_string(offset) + ")");
  }
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::Data, "cannot open '" + path + "'");
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

}  // namespace

std::vector<std::vector<double>> parse_idx_images(std::span<const std::uint8_t> bytes, int* rows,
                                                  int* cols) {
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != 2051) {
    throw Error(ErrorCategory::Parse,
                "bad IDX image magic " + std::to_string(magic) + " at offset 0 (want 2051)");
  }
  const std::uint32_t n = read_be32(bytes, 4);
  const std::uint32_t r = read_be32(bytes, 8);
  const std::uint32_t c = read_be32(bytes, 12);
  const std::size_t need = 16 + std::size_t{n} * r * c;
  if (bytes.size() < need) {
    throw Error(ErrorCategory::Parse,
                "truncated IDX image payload: have " + std::to_string(bytes.size()) +
                    " bytes, header at offset 4 promises " + std::to_string(need));
  }
  std::vector<std::vector<double>> images(n);
  std::size_t off = 16;
  for (std::uint32_t i = 0; i < n; ++i) {
    images[i].resize(std::size_t{r} * c);
    for (std::size_t p = 0; p < std::size_t{r} * c; ++p) {
      images[i][p] = static_cast<double>(bytes[off++]) / 255.0;
    }
  }
  if (rows != nullptr) *rows = static_cast<int>(r);
  if (cols != nullptr) *cols = static_cast<int>(c);
  return images;
}

std::vector<int> parse_idx_labels(std::span<const std::uint8_t> bytes) {
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != 2049) {
    throw Error(ErrorCategory::Parse,
                "bad IDX label magic " + std::to_string(magic) + " at offset 0 (want 2049)");
  }
  const std::uint32_t n = read_be32(bytes, 4);
  if (bytes.size() < 8 + n) {
    throw Error(ErrorCategory::Parse,
                "truncated IDX label payload: have " + std::to_string(bytes.size()) +
                    " bytes, header at offset 4 promises " + std::to_string(8 + n));
  }
  std::vector<int> labels(n);
  for (std::uint32_t i = 0; i < n; ++i) labels[i] = bytes[8 + i];
  return labels;
}

Dataset load_idx_dataset(const std::string& images_path, const std::string& labels_path) {
  const auto image_bytes = read_file(images_path);
  const auto label_bytes = read_file(labels_path);
  Dataset ds;
  auto images = parse_idx_images(image_bytes, &ds.rows, &ds.cols);
  const auto labels = parse_idx_labels(label_bytes);
  if (images.size() != labels.size()) {
    throw Error(ErrorCategory::Data,
                "image/label count mismatch: " + std::to_string(images.size()) + " vs " +
                    std::to_string(labels.size()));
  }
  ds.samples.resize(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    ds.samples[i].pixels = std::move(images[i]);
    ds.samples[i].label = labels[i];
  }
  return ds;
}

namespace detail {

EigenResult jacobi_symmetric(std::vector<double> a, int n, double tol, int max_sweeps) {
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<double> v(nn * nn, 0.0);
  for (std::size_t i = 0; i < nn; ++i) v[i * nn + i] = 1.0;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off_max = 0.0;
    for (std::size_t p = 0; p + 1 < nn; ++p) {
      for (std::size_t q = p + 1; q < nn; ++q) {
        const double apq = a[p * nn + q];
        off_max = std::max(off_max, std::abs(apq));
        if (std::abs(apq) <= tol) continue;
        const double app = a[p * nn + p];
        const double aqq = a[q * nn + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- J^T A J applied as a row pass then a column pass
        double* rp = &a[p * nn];
        double* rq = &a[q * nn];
        for (std::size_t i = 0; i < nn; ++i) {
          const double x = rp[i];
          const double y = rq[i];
          rp[i] = c * x - s * y;
          rq[i] = s * x + c * y;
        }
        for (std::size_t i = 0; i < nn; ++i) {
          const double x = a[i * nn + p];
          const double y = a[i * nn + q];
          a[i * nn + p] = c * x - s * y;
          a[i * nn + q] = s * x + c * y;
          const double vx = v[i * nn + p];
          const double vy = v[i * nn + q];
          v[i * nn + p] = c * vx - s * vy;
          v[i * nn + q] = s * vx + c * vy;
        }
        a[p * nn + q] = 0.0;
        a[q * nn + p] = 0.0;
      }
    }
    if (off_max <= tol) break;
    if (sweep == max_sweeps - 1) {
      throw Error(ErrorCategory::Internal,
                  "Jacobi did not converge in " + std::to_string(max_sweeps) + " sweeps");
    }
  }

  std::vector<std::size_t> order(nn);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * nn + i] > a[j * nn + j];
  });
  EigenResult out;
  out.values.resize(nn);
  out.vectors.resize(nn * nn);
  for (std::size_t k = 0; k < nn; ++k) {
    out.values[k] = a[order[k] * nn + order[k]];
    for (std::size_t i = 0; i < nn; ++i) out.vectors[k * nn + i] = v[i * nn + order[k]];
  }
  return out;
}

namespace {

void fix_sign(std::vector<double>& component) {
  std::size_t arg = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < component.size(); ++i) {
    const double m = std::abs(component[i]);
    if (m > best) {
      best = m;
      arg = i;
    }
  }
  if (component[arg] < 0.0) {
    for (double& x : component) x = -x;
  }
}

}  // namespace

PcaModel fit_pca_route(const PixelView& images, PcaRoute route) {
  const std::size_t m = images.size();
  if (m < 5) {
    throw Error(ErrorCategory::Data, "PCA wants at least 5 images, got " + std::to_string(m));
  }
  const std::size_t d = images[0]->size();
  for (const auto* img : images) {
    if (img->size() != d) {
      throw Error(ErrorCategory::Data, "PCA over images of differing sizes");
    }
  }

  PcaModel model;
  model.mean.assign(d, 0.0);
  for (const auto* img : images) {
    for (std::size_t i = 0; i < d; ++i) model.mean[i] += (*img)[i];
  }
  for (double& x : model.mean) x /= static_cast<double>(m);

  const double denom = static_cast<double>(m - 1);
  const bool use_gram = route == PcaRoute::Gram || (route == PcaRoute::Auto && m < d);

  detail::EigenResult eig;
  if (!use_gram) {
    std::vector<double> cov(d * d, 0.0);
    std::vector<double> centered(d);
    for (const auto* img : images) {
      for (std::size_t i = 0; i < d; ++i) centered[i] = (*img)[i] - model.mean[i];
      for (std::size_t i = 0; i < d; ++i) {
        const double ci = centered[i];
        if (ci == 0.0) continue;
        double* row = &cov[i * d];
        for (std::size_t j = i; j < d; ++j) row[j] += ci * centered[j];
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) {
        const double x = cov[i * d + j] / denom;
        cov[i * d + j] = x;
        cov[j * d + i] = x;
      }
    }
    double trace = 0.0;
    for (std::size_t i = 0; i < d; ++i) trace += cov[i * d + i];
    eig = detail::jacobi_symmetric(std::move(cov), static_cast<int>(d));
    model.total_variance = trace;
    for (int k = 0; k < 4; ++k) {
      model.eigenvalues[static_cast<std::size_t>(k)] = eig.values[static_cast<std::size_t>(k)];
      model.components[static_cast<std::size_t>(k)].assign(
          eig.vectors.begin() + k * static_cast<long>(d),
          eig.vectors.begin() + (k + 1) * static_cast<long>(d));
    }
  } else {
    // Gram route: eigenvectors u of the covariance from eigenvectors v of
    // G = A A^T / (m-1) via u = A^T v / sqrt((m-1) lambda).
    std::vector<std::vector<double>> centered(m, std::vector<double>(d));
    for (std::size_t s = 0; s < m; ++s) {
      for (std::size_t i = 0; i < d; ++i) centered[s][i] = (*images[s])[i] - model.mean[i];
    }
    std::vector<double> gram(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        double dot = 0.0;
        for (std::size_t k = 0; k < d; ++k) dot += centered[i][k] * centered[j][k];
        gram[i * m + j] = dot / denom;
        gram[j * m + i] = gram[i * m + j];
      }
    }
    double trace = 0.0;
    for (std::size_t i = 0; i < m; ++i) trace += gram[i * m + i];
    eig = detail::jacobi_symmetric(std::move(gram), static_cast<int>(m));
    model.total_variance = trace;
    for (int k = 0; k < 4; ++k) {
      const double lambda = eig.values[static_cast<std::size_t>(k)];
      model.eigenvalues[static_cast<std::size_t>(k)] = lambda;
      auto& comp = model.components[static_cast<std::size_t>(k)];
      comp.assign(d, 0.0);
      if (lambda <= 0.0) continue;
      const double scale = 1.0 / std::sqrt(denom * lambda);
      for (std::size_t s = 0; s < m; ++s) {
        const double w = eig.vectors[static_cast<std::size_t>(k) * m + s] * scale;
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < d; ++i) comp[i] += w * centered[s][i];
      }
    }
  }

  if (!(model.eigenvalues[0] > 0.0) ||
      model.eigenvalues[3] <= model.eigenvalues[0] * 1e-12) {
    throw Error(ErrorCategory::Data, "covariance rank below 4; input too degenerate for PCA");
  }
  for (auto& comp : model.components) fix_sign(comp);

  fit_feature_ranges(model, images);
  return model;
}

}  // namespace detail

PcaModel fit_pca(const PixelView& images) {
  return detail::fit_pca_route(images, detail::PcaRoute::Auto);
}

PcaModel fit_pca(const Dataset& dataset, const std::vector<int>& indices) {
  PixelView view;
  view.reserve(indices.size());
  for (const int i : indices) {
    view.push_back(&dataset.samples[static_cast<std::size_t>(i)].pixels);
  }
  return fit_pca(view);
}

void fit_feature_ranges(PcaModel& model, const PixelView& images) {
  if (images.empty()) throw Error(ErrorCategory::Data, "feature ranges over an empty set");
  for (int k = 0; k < 4; ++k) {
    model.feature_min[static_cast<std::size_t>(k)] = std::numeric_limits<double>::infinity();
    model.feature_max[static_cast<std::size_t>(k)] = -std::numeric_limits<double>::infinity();
  }
  for (const auto* img : images) {
    const auto f = project(model, *img);
    for (std::size_t k = 0; k < 4; ++k) {
      model.feature_min[k] = std::min(model.feature_min[k], f[k]);
      model.feature_max[k] = std::max(model.feature_max[k], f[k]);
    }
  }
}

std::array<double, 4> project(const PcaModel& model, std::span<const double> pixels) {
  if (pixels.size() != model.mean.size()) {
    throw Error(ErrorCategory::Data, "projected image size does not match the fitted model");
  }
  std::array<double, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& comp = model.components[k];
    double dot = 0.0;
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      dot += comp[i] * (pixels[i] - model.mean[i]);
    }
    out[k] = dot;
  }
  return out;
}

EncodedInput normalize_for(EncodingMethod method, const std::array<double, 4>& features,
                           const PcaModel& model, double rotation_range) {
  switch (method) {
    case EncodingMethod::Rotation: {
      std::array<double, 4> angles{};
      for (std::size_t k = 0; k < 4; ++k) {
        const double range = model.feature_max[k] - model.feature_min[k];
        if (!(range > 0.0)) {
          throw Error(ErrorCategory::Data,
                      "zero feature range for component " + std::to_string(k));
        }
        const double s = std::clamp((features[k] - model.feature_min[k]) / range, 0.0, 1.0);
        angles[k] = s * rotation_range;
      }
      return EncodedInput::rotation(angles);
    }
    case EncodingMethod::Amplitude: {
      std::array<double, 4> shifted{};
      double norm_sq = 0.0;
      for (std::size_t k = 0; k < 4; ++k) {
        shifted[k] = features[k] - model.feature_min[k];
        norm_sq += shifted[k] * shifted[k];
      }
      if (norm_sq <= 1e-24) {
        throw Error(ErrorCategory::Data, "features collapse to the zero vector after shifting");
      }
      return EncodedInput::amplitude(shifted);
    }
    case EncodingMethod::Basis: {
      const double range = model.feature_max[0] - model.feature_min[0];
      if (!(range > 0.0)) {
        throw Error(ErrorCategory::Data, "zero feature range for the first component");
      }
      const double s = std::clamp((features[0] - model.feature_min[0]) / range, 0.0, 1.0);
      const int value = std::min(static_cast<int>(s * 3.0), 2);
      return EncodedInput::basis(value);
    }
  }
  throw Error(ErrorCategory::Internal, "unreachable encoding method");
}

Dataset make_synthetic_dataset(std::uint64_t seed, int n) {
  if (n < 8) {
    throw Error(ErrorCategory::Data, "synthetic dataset wants n >= 8, got " + std::to_string(n));
  }
  constexpr std::size_t kDim = 784;
  Rng rng(seed);

  // Four orthonormal directions via Gram-Schmidt on Gaussian vectors.
  std::array<std::vector<double>, 4> dirs;
  for (auto& dir : dirs) {
    dir.resize(kDim);
    for (double& x : dir) x = rng.gaussian();
  }
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      double dot = 0.0;
      for (std::size_t i = 0; i < kDim; ++i) dot += dirs[k][i] * dirs[j][i];
      for (std::size_t i = 0; i < kDim; ++i) dirs[k][i] -= dot * dirs[j][i];
    }
    double norm = 0.0;
    for (const double x : dirs[k]) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : dirs[k]) x /= norm;
  }

  // Blob coordinates: class separation on direction 0, noise on the rest,
  // truncated at 4 sigma so the margin is guaranteed.
  const auto truncated = [&rng]() { return std::clamp(rng.gaussian(), -4.0, 4.0); };
  std::vector<std::array<double, 4>> coords(static_cast<std::size_t>(n));
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int label = (i % 2 == 0) ? 3 : 6;
    labels[static_cast<std::size_t>(i)] = label;
    auto& c = coords[static_cast<std::size_t>(i)];
    c[0] = (label == 3 ? 2.0 : -2.0) + 0.35 * truncated();
    for (std::size_t k = 1; k < 4; ++k) c[k] = 0.35 * truncated();
  }

  // Scale the subspace so every pixel stays inside [0, 1] around 0.5.
  double max_abs = 0.0;
  std::vector<std::vector<double>> offsets(static_cast<std::size_t>(n),
                                           std::vector<double>(kDim, 0.0));
  for (std::size_t s = 0; s < static_cast<std::size_t>(n); ++s) {
    for (std::size_t k = 0; k < 4; ++k) {
      for (std::size_t i = 0; i < kDim; ++i) offsets[s][i] += coords[s][k] * dirs[k][i];
    }
    for (const double x : offsets[s]) max_abs = std::max(max_abs, std::abs(x));
  }
  const double scale = max_abs > 0.0 ? 0.49 / max_abs : 1.0;

  Dataset ds;
  ds.rows = 28;
  ds.cols = 28;
  ds.samples.resize(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < static_cast<std::size_t>(n); ++s) {
    ds.samples[s].label = labels[s];
    ds.samples[s].pixels.resize(kDim);
    for (std::size_t i = 0; i < kDim; ++i) {
      ds.samples[s].pixels[i] = 0.5 + scale * offsets[s][i];
    }
  }
  return ds;
}

TwoClassSplit split_two_class(const Dataset& dataset, int label_a, int label_b, int n_train,
                              int n_test, Rng& rng) {
  if (n_train < 2 || n_test < 2) {
    throw Error(ErrorCategory::Data, "split wants at least 2 train and 2 test samples");
  }
  std::vector<int> idx_a;
  std::vector<int> idx_b;
  for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
    if (dataset.samples[i].label == label_a) idx_a.push_back(static_cast<int>(i));
    if (dataset.samples[i].label == label_b) idx_b.push_back(static_cast<int>(i));
  }
  rng.shuffle(idx_a);
  rng.shuffle(idx_b);

  const int train_a = (n_train + 1) / 2;
  const int train_b = n_train - train_a;
  const int test_a = (n_test + 1) / 2;
  const int test_b = n_test - test_a;
  if (static_cast<int>(idx_a.size()) < train_a + test_a ||
      static_cast<int>(idx_b.size()) < train_b + test_b) {
    throw Error(ErrorCategory::Data,
                "not enough samples: labels " + std::to_string(label_a) + "/" +
                    std::to_string(label_b) + " have " + std::to_string(idx_a.size()) + "/" +
                    std::to_string(idx_b.size()) + ", split wants " +
                    std::to_string(train_a + test_a) + "/" + std::to_string(train_b + test_b));
  }

  TwoClassSplit split;
  split.train.insert(split.train.end(), idx_a.begin(), idx_a.begin() + train_a);
  split.train.insert(split.train.end(), idx_b.begin(), idx_b.begin() + train_b);
  split.test.insert(split.test.end(), idx_a.begin() + train_a, idx_a.begin() + train_a + test_a);
  split.test.insert(split.test.end(), idx_b.begin() + train_b, idx_b.begin() + train_b + test_b);
  rng.shuffle(split.train);
  rng.shuffle(split.test);
  return split;
}

std::vector<int> pca_pool_indices(const Dataset& dataset, const std::vector<int>& train_indices,
                                  int label_a, int label_b, int n_other, Rng& rng) {
  std::vector<int> pool = train_indices;
  if (n_other <= 0) return pool;
  std::map<int, std::vector<int>> by_label;
  for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
    const int label = dataset.samples[i].label;
    if (label != label_a && label != label_b) by_label[label].push_back(static_cast<int>(i));
  }
  if (by_label.empty()) return pool;
  const int quota = n_other / static_cast<int>(by_label.size());
  int remainder = n_other % static_cast<int>(by_label.size());
  for (auto& [label, indices] : by_label) {
    rng.shuffle(indices);
    int take = quota + (remainder > 0 ? 1 : 0);
    if (remainder > 0) --remainder;
    take = std::min(take, static_cast<int>(indices.size()));
    pool.insert(pool.end(), indices.begin(), indices.begin() + take);
  }
  return pool;
}

}  // namespace qsc
