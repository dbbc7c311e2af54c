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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsc/encoders.hpp"
#include "qsc/rng.hpp"

namespace qsc {

struct ImageSample {
  std::vector<double> pixels;  // row-major grayscale in [0, 1]
  int label = 0;
};

struct Dataset {
  std::vector<ImageSample> samples;
  int rows = 0;
  int cols = 0;
};

// IDX (big-endian) readers. Images: magic 2051, dims [n, rows, cols], pixels
// scaled from [0, 255] to [0, 1]. Labels: magic 2049. Malformed input throws
// a parse error naming the byte offset.
std::vector<std::vector<double>> parse_idx_images(std::span<const std::uint8_t> bytes,
                                                  int* rows = nullptr, int* cols = nullptr);
std::vector<int> parse_idx_labels(std::span<const std::uint8_t> bytes);

Dataset load_idx_dataset(const std::string& images_path, const std::string& labels_path);

struct PcaModel {
  std::vector<double> mean;
  std::array<std::vector<double>, 4> components;  // orthonormal, variance-descending
  std::array<double, 4> eigenvalues{};
  double total_variance = 0.0;
  std::array<double, 4> feature_min{};  // per-component ranges over the fit set
  std::array<double, 4> feature_max{};
};

using PixelView = std::vector<const std::vector<double>*>;

namespace detail {

struct EigenResult {
  std::vector<double> values;   // descending
  std::vector<double> vectors;  // row i = eigenvector i
};

// Cyclic Jacobi on a symmetric matrix (row-major), sweeping until every
// off-diagonal entry is below `tol` in absolute value.
EigenResult jacobi_symmetric(std::vector<double> a, int n, double tol = 1e-10,
                             int max_sweeps = 40);

enum class PcaRoute { Auto, Covariance, Gram };

PcaModel fit_pca_route(const PixelView& images, PcaRoute route);

}  // namespace detail

// Top-4 eigenvectors of the sample covariance via cyclic Jacobi (on the Gram
// matrix instead when there are fewer images than pixels). Sign convention:
// the largest-magnitude entry of each component is positive. Feature ranges
// are taken over the fit set; refit them with fit_feature_ranges when the
// PCA basis is fitted on a different pool than the normalization set.
PcaModel fit_pca(const PixelView& images);
PcaModel fit_pca(const Dataset& dataset, const std::vector<int>& indices);

void fit_feature_ranges(PcaModel& model, const PixelView& images);

std::array<double, 4> project(const PcaModel& model, std::span<const double> pixels);

// Per-encoding normalization of projected features:
//   Rotation: min-max to [0, rotation_range] per component, outliers clamped.
//   Amplitude: shift by the per-component training minimum (nonnegative on
//     the fit range; the encoder still handles the signed leftovers).
//   Basis: min-max the first component to [0, 1], then floor(s * 3) capped
//     at 2, landing in {0, 1, 2}.
EncodedInput normalize_for(EncodingMethod method, const std::array<double, 4>& features,
                           const PcaModel& model, double rotation_range = 3.14159265358979323846);

// Two Gaussian blobs in an exact 4-dimensional affine subspace of pixel
// space, labeled 3/6, linearly separable with margin; deterministic per seed.
Dataset make_synthetic_dataset(std::uint64_t seed, int n);

struct TwoClassSplit {
  std::vector<int> train;  // indices into Dataset::samples
  std::vector<int> test;
};

// Seeded, class-balanced split; label_a receives the extra sample when a
// count is odd. Throws a data error when the dataset cannot supply it.
TwoClassSplit split_two_class(const Dataset& dataset, int label_a, int label_b, int n_train,
                              int n_test, Rng& rng);

// PCA fitting pool: the training indices plus a seeded subsample of
// other-label images, spread evenly across the other labels present.
std::vector<int> pca_pool_indices(const Dataset& dataset, const std::vector<int>& train_indices,
                                  int label_a, int label_b, int n_other, Rng& rng);

}  // namespace qsc
