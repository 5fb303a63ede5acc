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

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace ndr {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Index = Eigen::Index;

// n x p numeric table with named columns. Values are complete (no missing
// cells) once constructed; load_csv enforces that.
struct DataMatrix {
  MatrixXd values;
  std::vector<std::string> column_names;

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }
};

// Column means and standard deviations (n-1 divisor), fitted once and
// reusable on new rows.
struct Scaler {
  VectorXd mean;
  VectorXd sd;
};

// p x p symmetric covariance or correlation matrix.
struct CovarianceEstimate {
  MatrixXd S;
  int n_obs = 0;
  bool is_correlation = false;

  Index size() const { return S.rows(); }
};

// Inverse covariance estimate together with the penalty that produced it.
struct PrecisionMatrix {
  MatrixXd K;
  double lambda = 0.0;

  Index size() const { return K.rows(); }
};

// Weighted undirected network: symmetric, zero diagonal. For
// partial-correlation networks every |w_ij| <= 1.
struct Network {
  MatrixXd W;
  std::vector<std::string> node_names;

  Index size() const { return W.rows(); }
};

}  // namespace ndr
