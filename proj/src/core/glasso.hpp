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

#include <optional>
#include <vector>

#include "core/matrix.hpp"
#include "core/types.hpp"

namespace ndr::glasso {

// Descending, logarithmically spaced penalty sequence.
struct LambdaPath {
  std::vector<double> values;
  double min_max_ratio = 0.01;
};

// lambda_max is the largest absolute off-diagonal of S; lambda_min is
// ratio * lambda_max. Throws when all off-diagonals are zero.
LambdaPath lambda_path(const CovarianceEstimate& S, int count = 100, double ratio = 0.01);

struct GlassoFit {
  PrecisionMatrix precision;  // sparse K, exact zeros where thresholded
  MatrixXd W;                 // estimated covariance, inverse of K
  double lambda = 0.0;
  int iterations = 0;
  bool converged = false;
};

// L1-penalized precision estimation by block coordinate descent over rows,
// off-diagonal penalty only. Convergence is declared when the mean absolute
// change of W per sweep drops below tol * mean|off-diagonal of S|.
// lambda = 0 returns the unpenalized MLE (requires invertible S).
GlassoFit glasso_fit(const CovarianceEstimate& S, double lambda, double tol = 1e-4,
                     int max_iter = 100);

// (n/2) * (log det K - trace(S K)); additive constants are dropped since
// they cancel across penalty comparisons. Throws if K is not positive
// definite.
double gaussian_loglik(const PrecisionMatrix& precision, const CovarianceEstimate& S, int n);

struct EbicScore {
  double value = 0.0;
  double loglik = 0.0;
  int edges = 0;
  int n_obs = 0;
  int p_vars = 0;
  double gamma = 0.0;
};

// Nonzero off-diagonal upper-triangle entries of K.
int edge_count(const MatrixXd& K);

// -2L + E log(N) + 4 gamma E log(P), with E counting unordered pairs.
EbicScore ebic(const GlassoFit& fit, const CovarianceEstimate& S, int n, double gamma);

// Same formula from raw ingredients; exposed so scores can be recomputed.
double ebic_value(double loglik, int edges, int n, int p, double gamma);

struct PathPoint {
  double lambda = 0.0;
  int edges = 0;
  double loglik = 0.0;
  double ebic = 0.0;
  bool converged = false;
};

struct EbicglassoOptions {
  double gamma = 0.5;
  int path_count = 100;
  double min_max_ratio = 0.01;
  bool use_correlation = true;  // raw covariance input when false
  double tol = 1e-4;
  int max_iter = 100;
};

struct EbicglassoResult {
  Network network;
  GlassoFit fit;        // the selected fit
  EbicScore score;      // its EBIC
  int selected_index = -1;
  std::vector<PathPoint> path;
};

// Fits the whole penalty path (warm-started, descending), selects the
// minimum-EBIC converged fit, and returns it as a partial-correlation
// network. Throws when no fit on the path converged.
EbicglassoResult ebicglasso(const DataMatrix& X, const EbicglassoOptions& options = {});

// Path variant starting from a precomputed covariance estimate.
EbicglassoResult ebicglasso_from_cov(const CovarianceEstimate& S,
                                     std::vector<std::string> node_names,
                                     const EbicglassoOptions& options = {});

}  // namespace ndr::glasso
