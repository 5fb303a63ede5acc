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

#include "core/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "core/rng.hpp"

namespace ndr::baselines {

namespace {

// Descending eigenpairs of a symmetric matrix, tiny negatives clamped.
void symmetric_eigen_desc(const MatrixXd& S, VectorXd& values, MatrixXd& vectors) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(S);
  if (solver.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
  const Index p = S.rows();
  values.resize(p);
  vectors.resize(p, p);
  for (Index i = 0; i < p; ++i) {
    values(i) = std::max(solver.eigenvalues()(p - 1 - i), 0.0);
    vectors.col(i) = solver.eigenvectors().col(p - 1 - i);
  }
}

void pin_sign(MatrixXd& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    Index arg_max = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&arg_max);
    if (vectors(arg_max, j) < 0.0) vectors.col(j) = -vectors.col(j);
  }
}

int select_k(const VectorXd& eigenvalues, const PcaOptions& options) {
  const int p = static_cast<int>(eigenvalues.size());
  if (options.k.has_value()) {
    if (*options.k < 1 || *options.k > p) throw InvalidArgument("k out of range");
    return *options.k;
  }
  if (options.rule == KRule::cumulative_variance) {
    if (options.variance_threshold <= 0.0 || options.variance_threshold > 1.0) {
      throw InvalidArgument("variance threshold must be in (0, 1]");
    }
    const double total = eigenvalues.sum();
    double cumulative = 0.0;
    for (int i = 0; i < p; ++i) {
      cumulative += eigenvalues(i);
      if (cumulative / total >= options.variance_threshold - 1e-12) return i + 1;
    }
    return p;
  }
  // Acceleration: sharpest bend of the scree curve; the component count is
  // one less than the bend position.
  if (p < 3) return 1;
  int best = 2;
  double best_acc = -std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < p; ++i) {
    const double acc = eigenvalues(i - 1) - 2.0 * eigenvalues(i) + eigenvalues(i + 1);
    if (acc > best_acc) {
      best_acc = acc;
      best = i + 1;  // 1-based position of the bend
    }
  }
  return std::max(1, best - 1);
}

}  // namespace

PcaModel pca_fit(const DataMatrix& X, const PcaOptions& options) {
  PcaModel model;
  model.scaler = fit_scaler(X.values);
  const CovarianceEstimate R = correlation(X);

  VectorXd values;
  MatrixXd vectors;
  symmetric_eigen_desc(R.S, values, vectors);
  pin_sign(vectors);

  model.full_spectrum = values;
  model.k = select_k(values, options);
  model.components = vectors.leftCols(model.k);
  model.eigenvalues = values.head(model.k);
  return model;
}

MatrixXd pca_transform(const PcaModel& model, const DataMatrix& X) {
  if (X.cols() != model.components.rows()) {
    throw InvalidArgument("column count does not match the fitted model");
  }
  return apply_scaler(X.values, model.scaler) * model.components;
}

IcaModel ica_fit(const DataMatrix& X, int k, std::uint64_t seed, const IcaOptions& options) {
  const Index p = X.cols();
  const Index n = X.rows();
  if (k < 1 || k > static_cast<int>(p)) throw InvalidArgument("k out of range");
  if (n <= static_cast<Index>(k)) throw InvalidArgument("need more rows than components");

  IcaModel model;
  model.k = k;
  model.seed = seed;
  model.scaler = fit_scaler(X.values);
  const MatrixXd Z = apply_scaler(X.values, model.scaler);
  const CovarianceEstimate R = correlation(X);

  VectorXd values;
  MatrixXd vectors;
  symmetric_eigen_desc(R.S, values, vectors);
  pin_sign(vectors);
  for (int i = 0; i < k; ++i) {
    if (values(i) <= 1e-12) {
      throw NumericError("correlation matrix rank is below k; whitening undefined");
    }
  }
  model.whitening = vectors.leftCols(k) * values.head(k).cwiseSqrt().cwiseInverse().asDiagonal();
  const MatrixXd Zw = Z * model.whitening;  // n x k, identity covariance

  // Symmetric decorrelation: W <- (W W')^{-1/2} W.
  auto decorrelate = [](const MatrixXd& W) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(W * W.transpose());
    const VectorXd inv_sqrt = solver.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    return MatrixXd(solver.eigenvectors() * inv_sqrt.asDiagonal() *
                    solver.eigenvectors().transpose() * W);
  };

  Rng rng(seed);
  MatrixXd W(k, k);
  for (Index i = 0; i < W.rows(); ++i) {
    for (Index j = 0; j < W.cols(); ++j) W(i, j) = rng.normal();
  }
  W = decorrelate(W);

  const double inv_n = 1.0 / static_cast<double>(n);
  int iter = 0;
  for (; iter < options.max_iter; ++iter) {
    const MatrixXd U = Zw * W.transpose();       // n x k source estimates
    const MatrixXd G = U.array().tanh().matrix();  // logcosh contrast derivative
    const VectorXd g_prime_mean = (1.0 - G.array().square()).colwise().mean();
    MatrixXd W_new = (G.transpose() * Zw) * inv_n - g_prime_mean.asDiagonal() * W;
    W_new = decorrelate(W_new);

    double delta = 0.0;
    for (int i = 0; i < k; ++i) {
      delta = std::max(delta, std::abs(1.0 - std::abs(W_new.row(i).dot(W.row(i)))));
    }
    W = W_new;
    if (delta < options.tol) {
      model.converged = true;
      ++iter;
      break;
    }
  }
  model.iterations = iter;
  model.unmixing = W * model.whitening.transpose();  // k x p
  return model;
}

MatrixXd ica_transform(const IcaModel& model, const DataMatrix& X) {
  if (X.cols() != model.unmixing.cols()) {
    throw InvalidArgument("column count does not match the fitted model");
  }
  return apply_scaler(X.values, model.scaler) * model.unmixing.transpose();
}

}  // namespace ndr::baselines
