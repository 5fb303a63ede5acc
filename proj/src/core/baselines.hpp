// Copyright 2026 the netdimred authors
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

#include <cstdint>
#include <optional>

#include "core/matrix.hpp"
#include "core/types.hpp"

namespace ndr::baselines {

// Automated retained-component rule standing in for visual scree inspection.
enum class KRule {
  cumulative_variance,  // smallest k reaching the variance threshold
  acceleration,         // largest second difference of the scree curve
};

struct PcaOptions {
  std::optional<int> k;  // explicit override
  KRule rule = KRule::cumulative_variance;
  double variance_threshold = 0.8;
};

struct PcaModel {
  MatrixXd components;    // p x k, orthonormal columns
  VectorXd eigenvalues;   // k retained, descending
  VectorXd full_spectrum; // all p eigenvalues, descending
  int k = 0;
  Scaler scaler;
};

// Eigendecomposition of the correlation matrix of X (standardized
// internally). Component signs are pinned so the largest-magnitude entry of
// each loading vector is positive.
PcaModel pca_fit(const DataMatrix& X, const PcaOptions& options = {});

// Projects standardized rows onto the retained components.
MatrixXd pca_transform(const PcaModel& model, const DataMatrix& X);

struct IcaOptions {
  double tol = 1e-6;
  int max_iter = 200;
};

struct IcaModel {
  MatrixXd unmixing;   // k x p, applied to standardized rows
  MatrixXd whitening;  // p x k
  int k = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  int iterations = 0;
  Scaler scaler;
};

// FastICA with logcosh contrast and symmetric decorrelation after PCA
// whitening to k dimensions. Non-convergence returns the best iterate with
// converged = false.
IcaModel ica_fit(const DataMatrix& X, int k, std::uint64_t seed, const IcaOptions& options = {});

MatrixXd ica_transform(const IcaModel& model, const DataMatrix& X);

}  // namespace ndr::baselines
