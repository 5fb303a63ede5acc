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

// Independent reference implementations used to verify the production code.
// Everything here is written the slow, literal way on purpose and must stay
// decoupled from the implementations under test.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "core/glasso.hpp"
#include "core/graph.hpp"
#include "core/types.hpp"

namespace ndrtest {

// Literal double-loop modularity: (1/2D) sum_ij [w_ij - d_i d_j / 2D] delta.
inline double naive_modularity(const ndr::Network& net, const std::vector<int>& assignment) {
  const ndr::Index p = net.size();
  ndr::VectorXd degree(p);
  for (ndr::Index i = 0; i < p; ++i) degree(i) = net.W.row(i).sum();
  const double two_d = net.W.sum();
  double q = 0.0;
  for (ndr::Index i = 0; i < p; ++i) {
    for (ndr::Index j = 0; j < p; ++j) {
      if (assignment[i] != assignment[j]) continue;
      q += net.W(i, j) - degree(i) * degree(j) / two_d;
    }
  }
  return q / two_d;
}

// Enumerates every partition of n items (restricted growth strings) and
// calls the visitor with each assignment vector.
inline void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> a(n, 0);
  while (true) {
    visit(a);
    int bump = -1;
    for (int i = n - 1; i >= 1; --i) {
      int max_prefix = 0;
      for (int t = 0; t < i; ++t) max_prefix = std::max(max_prefix, a[t]);
      if (a[i] <= max_prefix) {
        bump = i;
        break;
      }
    }
    if (bump < 0) break;
    ++a[bump];
    for (int i = bump + 1; i < n; ++i) a[i] = 0;
  }
}

// Best achievable modularity over all partitions (exponential; n <= 10).
inline double brute_force_max_modularity(const ndr::Network& net) {
  double best = -std::numeric_limits<double>::infinity();
  for_each_partition(static_cast<int>(net.size()), [&](const std::vector<int>& a) {
    best = std::max(best, naive_modularity(net, a));
  });
  return best;
}

// Literal wTO: omega_ij = (sum_u a_iu a_uj + a_ij) / (min(d_i, d_j) + 1 - a_ij).
inline ndr::MatrixXd naive_wto(const ndr::Network& net) {
  const ndr::Index p = net.size();
  ndr::MatrixXd a = net.W.cwiseAbs();
  ndr::VectorXd d(p);
  for (ndr::Index i = 0; i < p; ++i) d(i) = a.row(i).sum();
  ndr::MatrixXd omega = ndr::MatrixXd::Zero(p, p);
  for (ndr::Index i = 0; i < p; ++i) {
    for (ndr::Index j = 0; j < p; ++j) {
      if (i == j) continue;
      double shared = 0.0;
      for (ndr::Index u = 0; u < p; ++u) shared += a(i, u) * a(u, j);
      omega(i, j) = (shared + a(i, j)) / (std::min(d(i), d(j)) + 1.0 - a(i, j));
    }
  }
  return omega;
}

// Maximum KKT violation of a glasso solution. For zero kappa_ij the
// stationarity condition is |W_ij - S_ij| <= lambda; for nonzero kappa_ij it
// is W_ij - S_ij = lambda * sign(kappa_ij). W is recomputed as the exact
// inverse of K so the check does not trust the solver's W.
inline double glasso_kkt_residual(const ndr::CovarianceEstimate& s, const ndr::MatrixXd& k,
                                  double lambda) {
  const ndr::MatrixXd w = k.inverse();
  double worst = 0.0;
  for (ndr::Index i = 0; i < s.size(); ++i) {
    for (ndr::Index j = 0; j < s.size(); ++j) {
      if (i == j) continue;
      const double diff = w(i, j) - s.S(i, j);
      if (k(i, j) == 0.0) {
        worst = std::max(worst, std::abs(diff) - lambda);
      } else {
        worst = std::max(worst, std::abs(diff - lambda * (k(i, j) > 0 ? 1.0 : -1.0)));
      }
    }
  }
  return worst;
}

// Ordinary least squares through the normal equations; reference for the
// lasso at zero penalty.
inline ndr::VectorXd least_squares(const ndr::MatrixXd& x, const ndr::VectorXd& y) {
  const ndr::Index n = x.rows();
  ndr::MatrixXd design(n, x.cols() + 1);
  design.col(0).setOnes();
  design.rightCols(x.cols()) = x;
  return (design.transpose() * design).ldlt().solve(design.transpose() * y);
}

// Amari performance index of P = estimated_unmixing * true_mixing; zero for
// a perfect scaled permutation.
inline double amari_index(const ndr::MatrixXd& p) {
  const ndr::Index k = p.rows();
  double total = 0.0;
  for (ndr::Index i = 0; i < k; ++i) {
    double row_max = 0.0, row_sum = 0.0;
    double col_max = 0.0, col_sum = 0.0;
    for (ndr::Index j = 0; j < k; ++j) {
      row_max = std::max(row_max, std::abs(p(i, j)));
      row_sum += std::abs(p(i, j));
      col_max = std::max(col_max, std::abs(p(j, i)));
      col_sum += std::abs(p(j, i));
    }
    total += row_sum / row_max - 1.0;
    total += col_sum / col_max - 1.0;
  }
  return total / static_cast<double>(2 * k * (k - 1));
}

}  // namespace ndrtest
