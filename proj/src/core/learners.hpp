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
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/types.hpp"

namespace ndr::learners {

struct LassoModel {
  VectorXd coefficients;
  double intercept = 0.0;
  double penalty = 0.0;
  bool converged = false;
  int sweeps = 0;
};

// Coordinate descent for 0.5 * mean squared error + penalty * |coef|_1 with
// an unpenalized intercept.
LassoModel lasso_fit(const MatrixXd& X, const VectorXd& y, double penalty, double tol = 1e-9,
                     int max_sweeps = 10000);

VectorXd lasso_predict(const LassoModel& model, const MatrixXd& X);

// Penalty at or above which every lasso coefficient is exactly zero.
double lasso_kill_penalty(const MatrixXd& X, const VectorXd& y);

struct LogisticModel {
  MatrixXd weights;     // p x C
  VectorXd intercepts;  // C
  double penalty = 0.0;
  int classes = 0;
  bool converged = false;
  int iterations = 0;
};

// Multinomial softmax with an L2 penalty on the weights (intercepts free),
// minimized by gradient descent with backtracking line search until the
// gradient norm drops below grad_tol.
LogisticModel logistic_fit(const MatrixXd& X, const std::vector<int>& y, int n_classes,
                           double penalty, double grad_tol = 1e-6, int max_iter = 20000);

// Loss and gradient of the logistic objective at the given parameters;
// exposed so the gradient can be checked externally.
double logistic_loss(const MatrixXd& X, const std::vector<int>& y, int n_classes,
                     double penalty, const MatrixXd& weights, const VectorXd& intercepts);
void logistic_gradient(const MatrixXd& X, const std::vector<int>& y, int n_classes,
                       double penalty, const MatrixXd& weights, const VectorXd& intercepts,
                       MatrixXd& grad_weights, VectorXd& grad_intercepts);

// Row-wise class probabilities; rows sum to one.
MatrixXd logistic_predict_proba(const LogisticModel& model, const MatrixXd& X);
std::vector<int> logistic_predict(const LogisticModel& model, const MatrixXd& X);

enum class LearnerKind { lasso, logistic };

struct GridSearchResult {
  double best_penalty = 0.0;
  std::vector<double> grid;
  MatrixXd cv_scores;  // grid point x fold
  std::vector<double> mean_scores;
  std::string refit_metric;  // "rmse" or "acc"
};

// Cross-validated penalty selection: minimizes RMSE for lasso, maximizes
// accuracy for logistic. Folds are stratified for classification; ties pick
// the smallest penalty.
GridSearchResult grid_search(const MatrixXd& X, const VectorXd& y_real,
                             const std::vector<int>& y_labels, int n_classes, LearnerKind kind,
                             const std::vector<double>& grid, int folds, std::uint64_t seed);

// Default penalty grids: a fixed ladder for logistic, a log-spaced path
// below the kill penalty for lasso.
std::vector<double> default_grid(LearnerKind kind, const MatrixXd& X, const VectorXd& y);

// Audit exports: coefficients, penalty, and classes as JSON documents.
std::string model_to_json(const LassoModel& model);
std::string model_to_json(const LogisticModel& model, const std::vector<std::string>& classes);

}  // namespace ndr::learners
