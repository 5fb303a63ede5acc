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

#include "core/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "core/bench.hpp"
#include "core/matrix.hpp"

namespace ndr::learners {

namespace {

double soft_threshold(double v, double lambda) {
  if (v > lambda) return v - lambda;
  if (v < -lambda) return v + lambda;
  return 0.0;
}

MatrixXd softmax_rows(const MatrixXd& scores) {
  MatrixXd probs(scores.rows(), scores.cols());
  for (Index i = 0; i < scores.rows(); ++i) {
    const double row_max = scores.row(i).maxCoeff();
    const VectorXd e = (scores.row(i).array() - row_max).exp();
    probs.row(i) = e.transpose() / e.sum();
  }
  return probs;
}

}  // namespace

double lasso_kill_penalty(const MatrixXd& X, const VectorXd& y) {
  const double n = static_cast<double>(X.rows());
  const VectorXd centered = y.array() - y.mean();
  const MatrixXd xc = X.rowwise() - X.colwise().mean();
  return (xc.transpose() * centered).cwiseAbs().maxCoeff() / n;
}

LassoModel lasso_fit(const MatrixXd& X, const VectorXd& y, double penalty, double tol,
                     int max_sweeps) {
  if (X.rows() != y.size()) throw InvalidArgument("X and y row counts differ");
  if (X.rows() < 2) throw InvalidArgument("need at least 2 rows");
  if (penalty < 0.0) throw InvalidArgument("penalty must be non-negative");
  const Index n = X.rows();
  const Index p = X.cols();
  const double inv_n = 1.0 / static_cast<double>(n);

  // Centering removes the intercept from the coordinate updates.
  const Eigen::RowVectorXd x_mean = X.colwise().mean();
  const MatrixXd xc = X.rowwise() - x_mean;
  const double y_mean = y.mean();
  const VectorXd yc = y.array() - y_mean;

  VectorXd col_scale(p);  // x_j' x_j / n
  for (Index j = 0; j < p; ++j) col_scale(j) = xc.col(j).squaredNorm() * inv_n;

  LassoModel model;
  model.penalty = penalty;
  model.coefficients = VectorXd::Zero(p);
  VectorXd residual = yc;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (Index j = 0; j < p; ++j) {
      if (col_scale(j) <= 0.0) continue;  // constant column gets no weight
      const double old = model.coefficients(j);
      const double rho = xc.col(j).dot(residual) * inv_n + col_scale(j) * old;
      const double updated = soft_threshold(rho, penalty) / col_scale(j);
      if (updated != old) {
        residual -= (updated - old) * xc.col(j);
        model.coefficients(j) = updated;
        max_change = std::max(max_change, std::abs(updated - old));
      }
    }
    if (max_change < tol) {
      model.converged = true;
      ++sweep;
      break;
    }
  }
  model.sweeps = sweep;
  model.intercept = y_mean - x_mean.dot(model.coefficients);
  return model;
}

VectorXd lasso_predict(const LassoModel& model, const MatrixXd& X) {
  if (X.cols() != model.coefficients.size()) throw InvalidArgument("column count mismatch");
  return (X * model.coefficients).array() + model.intercept;
}

double logistic_loss(const MatrixXd& X, const std::vector<int>& y, int n_classes, double penalty,
                     const MatrixXd& weights, const VectorXd& intercepts) {
  const Index n = X.rows();
  const MatrixXd scores = (X * weights).rowwise() + intercepts.transpose();
  double loss = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double row_max = scores.row(i).maxCoeff();
    const double log_sum = std::log((scores.row(i).array() - row_max).exp().sum()) + row_max;
    loss -= scores(i, y[i]) - log_sum;
  }
  loss /= static_cast<double>(n);
  loss += 0.5 * penalty * weights.squaredNorm();
  (void)n_classes;
  return loss;
}

void logistic_gradient(const MatrixXd& X, const std::vector<int>& y, int n_classes,
                       double penalty, const MatrixXd& weights, const VectorXd& intercepts,
                       MatrixXd& grad_weights, VectorXd& grad_intercepts) {
  const Index n = X.rows();
  const MatrixXd scores = (X * weights).rowwise() + intercepts.transpose();
  MatrixXd probs = softmax_rows(scores);
  for (Index i = 0; i < n; ++i) probs(i, y[i]) -= 1.0;
  const double inv_n = 1.0 / static_cast<double>(n);
  grad_weights = X.transpose() * probs * inv_n + penalty * weights;
  grad_intercepts = probs.colwise().sum().transpose() * inv_n;
  (void)n_classes;
}

LogisticModel logistic_fit(const MatrixXd& X, const std::vector<int>& y, int n_classes,
                           double penalty, double grad_tol, int max_iter) {
  if (X.rows() != static_cast<Index>(y.size())) throw InvalidArgument("X and y row counts differ");
  if (penalty < 0.0) throw InvalidArgument("penalty must be non-negative");
  if (n_classes < 2) throw InvalidArgument("need at least 2 classes");
  int distinct = 0;
  {
    std::vector<bool> seen(n_classes, false);
    for (int label : y) {
      if (label < 0 || label >= n_classes) throw InvalidArgument("label out of range");
      if (!seen[label]) {
        seen[label] = true;
        ++distinct;
      }
    }
  }
  if (distinct < 2) throw InvalidArgument("training labels contain a single class");

  const Index p = X.cols();
  LogisticModel model;
  model.penalty = penalty;
  model.classes = n_classes;
  model.weights = MatrixXd::Zero(p, n_classes);
  model.intercepts = VectorXd::Zero(n_classes);

  double loss = logistic_loss(X, y, n_classes, penalty, model.weights, model.intercepts);
  MatrixXd grad_w(p, n_classes);
  VectorXd grad_b(n_classes);
  double step = 1.0;

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    logistic_gradient(X, y, n_classes, penalty, model.weights, model.intercepts, grad_w, grad_b);
    const double grad_norm = std::sqrt(grad_w.squaredNorm() + grad_b.squaredNorm());
    if (grad_norm < grad_tol) {
      model.converged = true;
      break;
    }

    // Backtracking line search with Armijo decrease; the step grows again
    // after an accepted move so flat regions are crossed quickly.
    const double sq = grad_w.squaredNorm() + grad_b.squaredNorm();
    bool accepted = false;
    for (int half = 0; half < 60; ++half) {
      const MatrixXd w_try = model.weights - step * grad_w;
      const VectorXd b_try = model.intercepts - step * grad_b;
      const double loss_try = logistic_loss(X, y, n_classes, penalty, w_try, b_try);
      if (loss_try <= loss - 1e-4 * step * sq) {
        model.weights = w_try;
        model.intercepts = b_try;
        loss = loss_try;
        accepted = true;
        break;
      }
      step /= 2.0;
    }
    if (!accepted) break;  // step underflow: cannot make progress
    step *= 2.0;
  }
  model.iterations = iter;
  return model;
}

MatrixXd logistic_predict_proba(const LogisticModel& model, const MatrixXd& X) {
  if (X.cols() != model.weights.rows()) throw InvalidArgument("column count mismatch");
  return softmax_rows((X * model.weights).rowwise() + model.intercepts.transpose());
}

std::vector<int> logistic_predict(const LogisticModel& model, const MatrixXd& X) {
  const MatrixXd probs = logistic_predict_proba(model, X);
  std::vector<int> labels(probs.rows());
  for (Index i = 0; i < probs.rows(); ++i) {
    Index arg_max = 0;
    probs.row(i).maxCoeff(&arg_max);
    labels[i] = static_cast<int>(arg_max);
  }
  return labels;
}

std::vector<double> default_grid(LearnerKind kind, const MatrixXd& X, const VectorXd& y) {
  if (kind == LearnerKind::logistic) return {0.001, 0.01, 0.1, 1.0, 10.0};
  const double kill = lasso_kill_penalty(X, y);
  std::vector<double> grid(20);
  const double log_hi = std::log(kill);
  const double log_lo = std::log(0.001 * kill);
  for (int i = 0; i < 20; ++i) {
    const double t = static_cast<double>(i) / 19.0;
    grid[i] = std::exp(log_hi + t * (log_lo - log_hi));
  }
  std::reverse(grid.begin(), grid.end());  // ascending, so ties pick smaller
  return grid;
}

std::string model_to_json(const LassoModel& model) {
  nlohmann::json j{{"kind", "lasso"},
                   {"intercept", model.intercept},
                   {"penalty", model.penalty},
                   {"converged", model.converged}};
  j["coefficients"] = std::vector<double>(
      model.coefficients.data(), model.coefficients.data() + model.coefficients.size());
  return j.dump();
}

std::string model_to_json(const LogisticModel& model, const std::vector<std::string>& classes) {
  nlohmann::json j{{"kind", "logistic"},
                   {"penalty", model.penalty},
                   {"converged", model.converged},
                   {"classes", classes}};
  j["intercepts"] = std::vector<double>(model.intercepts.data(),
                                        model.intercepts.data() + model.intercepts.size());
  nlohmann::json weights = nlohmann::json::array();
  for (Index c = 0; c < model.weights.cols(); ++c) {
    weights.push_back(std::vector<double>(model.weights.col(c).data(),
                                          model.weights.col(c).data() + model.weights.rows()));
  }
  j["weights"] = weights;
  return j.dump();
}

GridSearchResult grid_search(const MatrixXd& X, const VectorXd& y_real,
                             const std::vector<int>& y_labels, int n_classes, LearnerKind kind,
                             const std::vector<double>& grid, int folds, std::uint64_t seed) {
  if (grid.empty()) throw InvalidArgument("grid must be non-empty");
  if (folds < 2) throw InvalidArgument("need at least 2 folds");
  const Index n = X.rows();

  std::vector<double> sorted_grid = grid;
  std::sort(sorted_grid.begin(), sorted_grid.end());

  const std::vector<int>* strata = kind == LearnerKind::logistic ? &y_labels : nullptr;
  const auto fold_sets = bench::kfold_split(static_cast<int>(n), folds, seed, strata);

  GridSearchResult result;
  result.grid = sorted_grid;
  result.refit_metric = kind == LearnerKind::lasso ? "rmse" : "acc";
  result.cv_scores.resize(static_cast<Index>(sorted_grid.size()), folds);

  for (int f = 0; f < folds; ++f) {
    std::vector<int> test = fold_sets[f];
    std::vector<int> train;
    for (int g = 0; g < folds; ++g) {
      if (g != f) train.insert(train.end(), fold_sets[g].begin(), fold_sets[g].end());
    }
    MatrixXd x_train(train.size(), X.cols()), x_test(test.size(), X.cols());
    for (std::size_t i = 0; i < train.size(); ++i) x_train.row(i) = X.row(train[i]);
    for (std::size_t i = 0; i < test.size(); ++i) x_test.row(i) = X.row(test[i]);

    for (std::size_t g = 0; g < sorted_grid.size(); ++g) {
      double metric;
      if (kind == LearnerKind::lasso) {
        VectorXd y_train(train.size()), y_test(test.size());
        for (std::size_t i = 0; i < train.size(); ++i) y_train(i) = y_real(train[i]);
        for (std::size_t i = 0; i < test.size(); ++i) y_test(i) = y_real(test[i]);
        const LassoModel m = lasso_fit(x_train, y_train, sorted_grid[g]);
        const VectorXd pred = lasso_predict(m, x_test);
        std::vector<double> truth(y_test.data(), y_test.data() + y_test.size());
        std::vector<double> est(pred.data(), pred.data() + pred.size());
        metric = bench::rmse(truth, est);
      } else {
        std::vector<int> y_train(train.size()), y_test(test.size());
        for (std::size_t i = 0; i < train.size(); ++i) y_train[i] = y_labels[train[i]];
        for (std::size_t i = 0; i < test.size(); ++i) y_test[i] = y_labels[test[i]];
        const LogisticModel m = logistic_fit(x_train, y_train, n_classes, sorted_grid[g]);
        metric = bench::accuracy(y_test, logistic_predict(m, x_test));
      }
      result.cv_scores(static_cast<Index>(g), f) = metric;
    }
  }

  result.mean_scores.resize(sorted_grid.size());
  double best = kind == LearnerKind::lasso ? std::numeric_limits<double>::infinity()
                                           : -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < sorted_grid.size(); ++g) {
    const double mean = result.cv_scores.row(static_cast<Index>(g)).mean();
    result.mean_scores[g] = mean;
    const bool better = kind == LearnerKind::lasso ? mean < best : mean > best;
    if (better) {
      best = mean;
      result.best_penalty = sorted_grid[g];
    }
  }
  return result;
}

}  // namespace ndr::learners
