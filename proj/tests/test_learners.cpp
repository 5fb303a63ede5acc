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

#include <doctest.h>

#include <cmath>

#include "core/bench.hpp"
#include "core/learners.hpp"
#include "core/matrix.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace ndr;
using namespace ndr::learners;
using namespace ndrtest;

namespace {

// Standardized design plus a linear response with small noise.
struct Problem {
  MatrixXd x;
  VectorXd y;
};

Problem make_problem(Rng& rng, Index n, Index p) {
  Problem prob;
  prob.x = apply_scaler(random_normal(rng, n, p), fit_scaler(random_normal(rng, n, p)));
  prob.x = random_normal(rng, n, p);
  prob.x = apply_scaler(prob.x, fit_scaler(prob.x));
  VectorXd beta = VectorXd::Zero(p);
  for (Index j = 0; j < std::min<Index>(p, 3); ++j) beta(j) = 1.5 - 0.4 * static_cast<double>(j);
  prob.y = prob.x * beta;
  for (Index i = 0; i < n; ++i) prob.y(i) += 0.05 * rng.normal();
  return prob;
}

double lasso_subgradient(const MatrixXd& x, const VectorXd& y, const LassoModel& model, Index j) {
  const VectorXd residual = y - lasso_predict(model, x);
  const MatrixXd xc = x.rowwise() - x.colwise().mean();
  return xc.col(j).dot(residual) / static_cast<double>(x.rows());
}

}  // namespace

TEST_SUITE("learners") {

TEST_CASE("lasso kill penalty zeroes every coefficient") {
  Rng rng(301);
  const Problem prob = make_problem(rng, 80, 5);
  const double kill = lasso_kill_penalty(prob.x, prob.y);
  const LassoModel model = lasso_fit(prob.x, prob.y, kill * 1.000001);
  CHECK(model.coefficients.cwiseAbs().maxCoeff() == 0.0);
  CHECK(model.intercept == doctest::Approx(prob.y.mean()).epsilon(1e-12));

  // Just below the kill point something survives.
  const LassoModel below = lasso_fit(prob.x, prob.y, kill * 0.99);
  CHECK(below.coefficients.cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("lasso at zero penalty matches ordinary least squares") {
  Rng rng(303);
  const Problem prob = make_problem(rng, 60, 4);
  const LassoModel model = lasso_fit(prob.x, prob.y, 0.0);
  const VectorXd ols = least_squares(prob.x, prob.y);
  CHECK(std::abs(model.intercept - ols(0)) < 1e-6);
  for (Index j = 0; j < 4; ++j) {
    CHECK(std::abs(model.coefficients(j) - ols(j + 1)) < 1e-6);
  }
}

TEST_CASE("lasso recovers an exact single-variable relation") {
  Rng rng(305);
  MatrixXd x = random_normal(rng, 100, 4);
  x = apply_scaler(x, fit_scaler(x));
  const VectorXd y = 2.0 * x.col(0);
  const LassoModel model = lasso_fit(x, y, 1e-4);
  CHECK(model.coefficients(0) == doctest::Approx(2.0).epsilon(1e-3));
  for (Index j = 1; j < 4; ++j) {
    CHECK(std::abs(model.coefficients(j)) < 1e-3);
  }
}

TEST_CASE("lasso solutions satisfy the KKT conditions") {
  Rng rng(307);
  for (int rep = 0; rep < 10; ++rep) {
    const Problem prob = make_problem(rng, 50, 6);
    const double penalty = 0.02 + 0.1 * rng.uniform();
    const LassoModel model = lasso_fit(prob.x, prob.y, penalty);
    REQUIRE(model.converged);
    for (Index j = 0; j < 6; ++j) {
      const double g = lasso_subgradient(prob.x, prob.y, model, j);
      if (model.coefficients(j) == 0.0) {
        CHECK(std::abs(g) <= penalty + 1e-6);
      } else {
        CHECK(std::abs(g - penalty * (model.coefficients(j) > 0 ? 1.0 : -1.0)) < 1e-6);
      }
    }
  }
}

TEST_CASE("logistic separates a separable two-point problem") {
  MatrixXd x(2, 1);
  x << -1.0, 1.0;
  const std::vector<int> y{0, 1};
  const LogisticModel model = logistic_fit(x, y, 2, 0.001);
  const std::vector<int> pred = logistic_predict(model, x);
  CHECK(pred == y);
}

TEST_CASE("huge penalty shrinks logistic weights to the majority rule") {
  Rng rng(311);
  MatrixXd x = random_normal(rng, 60, 3);
  std::vector<int> y(60);
  for (int i = 0; i < 60; ++i) y[i] = i < 40 ? 0 : 1;  // majority class 0
  const LogisticModel model = logistic_fit(x, y, 2, 1e6);
  CHECK(model.weights.cwiseAbs().maxCoeff() < 1e-4);
  const std::vector<int> pred = logistic_predict(model, x);
  for (int label : pred) CHECK(label == 0);
}

TEST_CASE("logistic gradient matches central finite differences") {
  Rng rng(313);
  const MatrixXd x = random_normal(rng, 30, 3);
  std::vector<int> y(30);
  for (int i = 0; i < 30; ++i) y[i] = static_cast<int>(rng.below(3));
  MatrixXd weights = random_normal(rng, 3, 3) * 0.3;
  VectorXd intercepts(3);
  intercepts << 0.1, -0.2, 0.05;
  const double penalty = 0.05;

  MatrixXd grad_w(3, 3);
  VectorXd grad_b(3);
  logistic_gradient(x, y, 3, penalty, weights, intercepts, grad_w, grad_b);

  const double h = 1e-6;
  for (Index a = 0; a < 3; ++a) {
    for (Index c = 0; c < 3; ++c) {
      MatrixXd plus = weights, minus = weights;
      plus(a, c) += h;
      minus(a, c) -= h;
      const double fd = (logistic_loss(x, y, 3, penalty, plus, intercepts) -
                         logistic_loss(x, y, 3, penalty, minus, intercepts)) /
                        (2.0 * h);
      CHECK(std::abs(fd - grad_w(a, c)) < 1e-5);
    }
  }
  for (Index c = 0; c < 3; ++c) {
    VectorXd plus = intercepts, minus = intercepts;
    plus(c) += h;
    minus(c) -= h;
    const double fd = (logistic_loss(x, y, 3, penalty, weights, plus) -
                       logistic_loss(x, y, 3, penalty, weights, minus)) /
                      (2.0 * h);
    CHECK(std::abs(fd - grad_b(c)) < 1e-5);
  }
}

TEST_CASE("logistic converges to a small gradient and calibrated probabilities") {
  Rng rng(317);
  const MatrixXd x = random_normal(rng, 120, 4);
  std::vector<int> y(120);
  for (int i = 0; i < 120; ++i) {
    y[i] = x(i, 0) + 0.5 * x(i, 1) + 0.3 * rng.normal() > 0 ? 1 : 0;
  }
  const LogisticModel model = logistic_fit(x, y, 2, 0.01);
  CHECK(model.converged);
  MatrixXd grad_w;
  VectorXd grad_b;
  logistic_gradient(x, y, 2, 0.01, model.weights, model.intercepts, grad_w, grad_b);
  CHECK(std::sqrt(grad_w.squaredNorm() + grad_b.squaredNorm()) < 1e-6);

  const MatrixXd probs = logistic_predict_proba(model, x);
  for (Index i = 0; i < probs.rows(); ++i) {
    CHECK(std::abs(probs.row(i).sum() - 1.0) < 1e-12);
  }
}

TEST_CASE("logistic rejects single-class training data") {
  MatrixXd x(4, 2);
  x.setRandom();
  CHECK_THROWS_AS(logistic_fit(x, {1, 1, 1, 1}, 2, 0.1), InvalidArgument);
}

TEST_CASE("grid of one point selects that point") {
  Rng rng(319);
  const Problem prob = make_problem(rng, 40, 3);
  const GridSearchResult result =
      grid_search(prob.x, prob.y, {}, 0, LearnerKind::lasso, {0.05}, 3, 77);
  CHECK(result.best_penalty == 0.05);
}

TEST_CASE("grid search prefers the working penalty over a destructive one") {
  Rng rng(321);
  const Problem prob = make_problem(rng, 60, 4);
  const GridSearchResult result =
      grid_search(prob.x, prob.y, {}, 0, LearnerKind::lasso, {1e6, 0.01}, 3, 78);
  CHECK(result.best_penalty == 0.01);
}

TEST_CASE("grid search is deterministic") {
  Rng rng(323);
  MatrixXd x = random_normal(rng, 50, 3);
  std::vector<int> y(50);
  for (int i = 0; i < 50; ++i) y[i] = x(i, 0) > 0 ? 1 : 0;
  const std::vector<double> grid{0.001, 0.01, 0.1, 1.0, 10.0};
  const GridSearchResult a = grid_search(x, {}, y, 2, LearnerKind::logistic, grid, 3, 99);
  const GridSearchResult b = grid_search(x, {}, y, 2, LearnerKind::logistic, grid, 3, 99);
  CHECK(a.best_penalty == b.best_penalty);
  CHECK(a.cv_scores == b.cv_scores);
}

TEST_CASE("grid search scores can be recomputed from scratch") {
  Rng rng(327);
  const Problem prob = make_problem(rng, 45, 3);
  const std::vector<double> grid{0.01, 0.1};
  const std::uint64_t seed = 55;
  const GridSearchResult result =
      grid_search(prob.x, prob.y, {}, 0, LearnerKind::lasso, grid, 3, seed);

  const auto folds = bench::kfold_split(45, 3, seed, nullptr);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (int f = 0; f < 3; ++f) {
      std::vector<int> train;
      for (int other = 0; other < 3; ++other) {
        if (other != f) train.insert(train.end(), folds[other].begin(), folds[other].end());
      }
      MatrixXd x_train(train.size(), 3), x_test(folds[f].size(), 3);
      VectorXd y_train(train.size());
      std::vector<double> truth(folds[f].size());
      for (std::size_t i = 0; i < train.size(); ++i) {
        x_train.row(i) = prob.x.row(train[i]);
        y_train(i) = prob.y(train[i]);
      }
      for (std::size_t i = 0; i < folds[f].size(); ++i) {
        x_test.row(i) = prob.x.row(folds[f][i]);
        truth[i] = prob.y(folds[f][i]);
      }
      const LassoModel m = lasso_fit(x_train, y_train, grid[g]);
      const VectorXd pred = lasso_predict(m, x_test);
      std::vector<double> est(pred.data(), pred.data() + pred.size());
      CHECK(result.cv_scores(static_cast<Index>(g), f) ==
            doctest::Approx(bench::rmse(truth, est)).epsilon(1e-12));
    }
  }
}

TEST_CASE("default grids") {
  Rng rng(329);
  const Problem prob = make_problem(rng, 40, 3);
  const std::vector<double> logit_grid = default_grid(LearnerKind::logistic, prob.x, prob.y);
  CHECK(logit_grid == std::vector<double>{0.001, 0.01, 0.1, 1.0, 10.0});

  const std::vector<double> lasso_grid = default_grid(LearnerKind::lasso, prob.x, prob.y);
  CHECK(lasso_grid.size() == 20);
  const double kill = lasso_kill_penalty(prob.x, prob.y);
  CHECK(lasso_grid.back() == doctest::Approx(kill).epsilon(1e-12));
  CHECK(lasso_grid.front() == doctest::Approx(0.001 * kill).epsilon(1e-9));
  for (std::size_t i = 1; i < lasso_grid.size(); ++i) CHECK(lasso_grid[i] > lasso_grid[i - 1]);
}

TEST_CASE("grid search input validation") {
  Rng rng(331);
  const Problem prob = make_problem(rng, 30, 3);
  CHECK_THROWS_AS(grid_search(prob.x, prob.y, {}, 0, LearnerKind::lasso, {}, 3, 1),
                  InvalidArgument);
  CHECK_THROWS_AS(grid_search(prob.x, prob.y, {}, 0, LearnerKind::lasso, {0.1}, 1, 1),
                  InvalidArgument);
}

}  // TEST_SUITE
