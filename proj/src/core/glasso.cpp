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

#include "core/glasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

namespace ndr::glasso {

namespace {

constexpr double kZeroThreshold = 1e-10;  // |kappa| below this is an exact zero

double soft_threshold(double v, double lambda) {
  if (v > lambda) return v - lambda;
  if (v < -lambda) return v + lambda;
  return 0.0;
}

double mean_abs_offdiag(const MatrixXd& S) {
  const Index p = S.rows();
  if (p < 2) return 0.0;
  double sum = 0.0;
  for (Index i = 0; i < p; ++i) {
    for (Index j = 0; j < p; ++j) {
      if (i != j) sum += std::abs(S(i, j));
    }
  }
  return sum / static_cast<double>(p * (p - 1));
}

void validate_input(const CovarianceEstimate& S, double lambda) {
  const Index p = S.size();
  if (S.S.cols() != p || p < 1) throw InvalidArgument("covariance matrix must be square");
  if (lambda < 0.0) throw InvalidArgument("lambda must be non-negative");
  if (!S.S.isApprox(S.S.transpose(), 1e-9)) {
    throw InvalidArgument("covariance matrix must be symmetric");
  }
  for (Index i = 0; i < p; ++i) {
    if (S.S(i, i) <= 0.0) throw InvalidArgument("covariance diagonal must be positive");
  }
}

// One lasso subproblem: minimize 0.5 b' W11 b - s12' b + lambda |b|_1,
// expressed over the full index set with the j-th coordinate pinned to zero.
// beta is updated in place; returns the number of inner sweeps.
int lasso_column(const MatrixXd& W, const MatrixXd& S, Index j, double lambda, double inner_tol,
                 VectorXd& beta) {
  const Index p = W.rows();
  int sweeps = 0;
  for (; sweeps < 1000; ++sweeps) {
    double max_change = 0.0;
    for (Index k = 0; k < p; ++k) {
      if (k == j) continue;
      const double gradient_rest = W.row(k).dot(beta) - W(k, k) * beta(k);
      const double v = S(k, j) - gradient_rest;
      const double updated = soft_threshold(v, lambda) / W(k, k);
      max_change = std::max(max_change, std::abs(updated - beta(k)));
      beta(k) = updated;
    }
    if (max_change < inner_tol) break;
  }
  return sweeps;
}

// Recovers K from the converged W and the per-column regression
// coefficients. Exact zeros in beta stay exact zeros in K.
MatrixXd recover_precision(const MatrixXd& W, const MatrixXd& B) {
  const Index p = W.rows();
  MatrixXd K = MatrixXd::Zero(p, p);
  for (Index j = 0; j < p; ++j) {
    double quad = 0.0;
    for (Index k = 0; k < p; ++k) {
      if (k != j) quad += W(k, j) * B(k, j);
    }
    const double k_jj = 1.0 / (W(j, j) - quad);
    K(j, j) = k_jj;
    for (Index k = 0; k < p; ++k) {
      if (k != j && B(k, j) != 0.0) K(k, j) = -B(k, j) * k_jj;
    }
  }
  // Symmetrize, preserving the sparsity pattern: a pair is zero only when
  // both directions are (numerically) zero.
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      if (std::abs(K(i, j)) < kZeroThreshold && std::abs(K(j, i)) < kZeroThreshold) {
        K(i, j) = K(j, i) = 0.0;
      } else {
        const double avg = (K(i, j) + K(j, i)) / 2.0;
        K(i, j) = K(j, i) = avg;
      }
    }
  }
  return K;
}

GlassoFit glasso_fit_warm(const CovarianceEstimate& S, double lambda, double tol, int max_iter,
                          MatrixXd& W, MatrixXd& B) {
  const Index p = S.size();
  const double scale = mean_abs_offdiag(S.S);
  const double thr = tol * (scale > 0.0 ? scale : 1.0);
  const double inner_tol = thr / 10.0;

  GlassoFit fit;
  fit.lambda = lambda;

  int sweep = 0;
  bool converged = false;
  VectorXd beta(p);
  for (; sweep < max_iter; ++sweep) {
    double total_change = 0.0;
    for (Index j = 0; j < p; ++j) {
      beta = B.col(j);
      lasso_column(W, S.S, j, lambda, inner_tol, beta);
      B.col(j) = beta;
      // w12 = W11 * beta; beta(j) is pinned to zero so the full row dot
      // product evaluates the reduced system.
      for (Index k = 0; k < p; ++k) {
        if (k == j) continue;
        const double w_kj = W.row(k).dot(beta);
        total_change += std::abs(w_kj - W(k, j));
        W(k, j) = w_kj;
        W(j, k) = w_kj;
      }
    }
    const double avg_change = total_change / static_cast<double>(std::max<Index>(p * (p - 1), 1));
    if (avg_change < thr) {
      converged = true;
      ++sweep;
      break;
    }
  }

  fit.iterations = sweep;
  fit.converged = converged;
  fit.W = W;
  fit.precision.K = recover_precision(W, B);
  fit.precision.lambda = lambda;
  return fit;
}

}  // namespace

LambdaPath lambda_path(const CovarianceEstimate& S, int count, double ratio) {
  validate_input(S, 0.0);
  if (count < 2) throw InvalidArgument("lambda path needs at least 2 points");
  if (ratio <= 0.0 || ratio >= 1.0) throw InvalidArgument("ratio must be in (0, 1)");
  double lambda_max = 0.0;
  for (Index i = 0; i < S.size(); ++i) {
    for (Index j = i + 1; j < S.size(); ++j) {
      lambda_max = std::max(lambda_max, std::abs(S.S(i, j)));
    }
  }
  if (lambda_max <= 0.0) throw NumericError("all off-diagonals are zero; lambda path undefined");

  LambdaPath path;
  path.min_max_ratio = ratio;
  path.values.resize(count);
  const double log_max = std::log(lambda_max);
  const double log_min = std::log(ratio * lambda_max);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    path.values[i] = std::exp(log_max + t * (log_min - log_max));
  }
  path.values.front() = lambda_max;
  path.values.back() = ratio * lambda_max;
  return path;
}

GlassoFit glasso_fit(const CovarianceEstimate& S, double lambda, double tol, int max_iter) {
  validate_input(S, lambda);
  const Index p = S.size();

  if (p == 1) {
    GlassoFit fit;
    fit.lambda = lambda;
    fit.converged = true;
    fit.W = S.S;
    fit.precision.K = MatrixXd::Constant(1, 1, 1.0 / S.S(0, 0));
    fit.precision.lambda = lambda;
    return fit;
  }

  if (lambda == 0.0) {
    // Unpenalized MLE: K is the plain inverse.
    Eigen::LLT<MatrixXd> llt(S.S);
    if (llt.info() != Eigen::Success) {
      throw NumericError("covariance matrix is singular; lambda = 0 has no solution");
    }
    GlassoFit fit;
    fit.lambda = 0.0;
    fit.converged = true;
    fit.W = S.S;
    MatrixXd K = llt.solve(MatrixXd::Identity(p, p));
    fit.precision.K = (K + K.transpose()) / 2.0;
    fit.precision.lambda = 0.0;
    return fit;
  }

  MatrixXd W = S.S;
  MatrixXd B = MatrixXd::Zero(p, p);
  return glasso_fit_warm(S, lambda, tol, max_iter, W, B);
}

double gaussian_loglik(const PrecisionMatrix& precision, const CovarianceEstimate& S, int n) {
  const MatrixXd& K = precision.K;
  if (K.rows() != S.size()) throw InvalidArgument("dimension mismatch");
  Eigen::LLT<MatrixXd> llt(K);
  if (llt.info() != Eigen::Success) {
    throw NumericError("precision matrix is not positive definite");
  }
  double log_det = 0.0;
  const MatrixXd L = llt.matrixL();
  for (Index i = 0; i < K.rows(); ++i) log_det += 2.0 * std::log(L(i, i));
  const double trace_sk = (S.S.cwiseProduct(K)).sum();
  return (static_cast<double>(n) / 2.0) * (log_det - trace_sk);
}

int edge_count(const MatrixXd& K) {
  int edges = 0;
  for (Index i = 0; i < K.rows(); ++i) {
    for (Index j = i + 1; j < K.cols(); ++j) {
      if (K(i, j) != 0.0) ++edges;
    }
  }
  return edges;
}

double ebic_value(double loglik, int edges, int n, int p, double gamma) {
  return -2.0 * loglik + static_cast<double>(edges) * std::log(static_cast<double>(n)) +
         4.0 * gamma * static_cast<double>(edges) * std::log(static_cast<double>(p));
}

EbicScore ebic(const GlassoFit& fit, const CovarianceEstimate& S, int n, double gamma) {
  if (gamma < 0.0) throw InvalidArgument("gamma must be non-negative");
  EbicScore score;
  score.loglik = gaussian_loglik(fit.precision, S, n);
  score.edges = edge_count(fit.precision.K);
  score.n_obs = n;
  score.p_vars = static_cast<int>(S.size());
  score.gamma = gamma;
  score.value = ebic_value(score.loglik, score.edges, n, score.p_vars, gamma);
  return score;
}

EbicglassoResult ebicglasso_from_cov(const CovarianceEstimate& S,
                                     std::vector<std::string> node_names,
                                     const EbicglassoOptions& options) {
  const LambdaPath path = lambda_path(S, options.path_count, options.min_max_ratio);
  const Index p = S.size();

  EbicglassoResult result;
  result.path.reserve(path.values.size());

  MatrixXd W = S.S;
  MatrixXd B = MatrixXd::Zero(p, p);
  GlassoFit best;
  EbicScore best_score;
  double best_value = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < path.values.size(); ++i) {
    GlassoFit fit = glasso_fit_warm(S, path.values[i], options.tol, options.max_iter, W, B);
    PathPoint point;
    point.lambda = fit.lambda;
    point.converged = fit.converged;
    if (fit.converged) {
      try {
        const EbicScore score = ebic(fit, S, S.n_obs, options.gamma);
        point.edges = score.edges;
        point.loglik = score.loglik;
        point.ebic = score.value;
        if (score.value < best_value) {
          best_value = score.value;
          best = fit;
          best_score = score;
          result.selected_index = static_cast<int>(i);
        }
      } catch (const NumericError&) {
        // Indefinite K from a marginal fit: not a selection candidate.
        point.converged = false;
      }
    }
    result.path.push_back(point);
  }

  if (result.selected_index < 0) {
    throw NumericError("no glasso fit on the penalty path converged");
  }
  result.network = precision_to_partial(best.precision, std::move(node_names));
  result.fit = std::move(best);
  result.score = best_score;
  return result;
}

EbicglassoResult ebicglasso(const DataMatrix& X, const EbicglassoOptions& options) {
  const CovarianceEstimate S = options.use_correlation ? correlation(X) : covariance(X);
  return ebicglasso_from_cov(S, X.column_names, options);
}

}  // namespace ndr::glasso
