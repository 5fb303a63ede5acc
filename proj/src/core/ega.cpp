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

#include "core/ega.hpp"

#include <cmath>
#include <numeric>

namespace ndr::ega {

LoadingMatrix network_loadings(const Network& net, const graph::Membership& m) {
  const Index p = net.size();
  graph::validate_membership(m, p);
  const int f_count = m.community_count;

  LoadingMatrix out;
  out.membership = m;
  out.raw = MatrixXd::Zero(p, f_count);
  for (Index i = 0; i < p; ++i) {
    for (Index j = 0; j < p; ++j) {
      if (i == j) continue;
      out.raw(i, m.assignment[j] - 1) += std::abs(net.W(i, j));
    }
  }
  out.standardized = MatrixXd::Zero(p, f_count);
  for (int f = 0; f < f_count; ++f) {
    const double col_sum = out.raw.col(f).sum();
    if (col_sum > 0.0) out.standardized.col(f) = out.raw.col(f) / std::sqrt(col_sum);
  }
  return out;
}

MatrixXd network_scores(const DataMatrix& X, const LoadingMatrix& loadings) {
  const Index p = X.cols();
  const Index n = X.rows();
  if (loadings.raw.rows() != p) {
    throw InvalidArgument("loading rows do not match data columns");
  }
  const int f_count = loadings.membership.community_count;
  const Scaler scaler = fit_scaler(X.values);

  MatrixXd scores = MatrixXd::Zero(n, f_count);
  for (int f = 0; f < f_count; ++f) {
    std::vector<Index> members;
    for (Index i = 0; i < p; ++i) {
      if (loadings.membership.assignment[i] == f + 1) members.push_back(i);
    }
    VectorXd v(members.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
      const double sd = scaler.sd(members[k]);
      if (sd <= 0.0) throw NumericError("zero-variance variable cannot be scored");
      v(static_cast<Index>(k)) = loadings.standardized(members[k], f) / sd;
    }
    const double v_sum = v.sum();
    if (v_sum <= 0.0) {
      if (members.size() == 1) {
        // Isolated variable: the dimension is the variable itself.
        scores.col(f) = X.values.col(members[0]);
        continue;
      }
      throw NumericError("community " + std::to_string(f + 1) + " has zero total loading");
    }
    for (std::size_t k = 0; k < members.size(); ++k) {
      scores.col(f) += X.values.col(members[k]) * (v(static_cast<Index>(k)) / v_sum);
    }
  }
  return scores;
}

EgaResult ega(const DataMatrix& X, const EgaOptions& options) {
  glasso::EbicglassoOptions gopts = options.glasso;
  gopts.gamma = options.gamma;

  EgaResult result;
  glasso::EbicglassoResult fit = glasso::ebicglasso(X, gopts);
  result.network = std::move(fit.network);
  result.glasso_path = std::move(fit.path);
  result.selected_lambda = fit.fit.lambda;

  const Index p = result.network.size();
  bool any_edge = false;
  for (Index i = 0; i < p && !any_edge; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      if (result.network.W(i, j) != 0.0) {
        any_edge = true;
        break;
      }
    }
  }

  if (!any_edge) {
    std::vector<int> singles(p);
    std::iota(singles.begin(), singles.end(), 1);
    result.membership = graph::Membership{std::move(singles), static_cast<int>(p)};
    result.all_isolated = true;
  } else if (options.algorithm == Algorithm::walktrap) {
    result.membership = graph::walktrap(result.network, options.walk_steps);
  } else {
    result.membership = graph::louvain(result.network, options.seed);
  }

  result.loadings = network_loadings(result.network, result.membership);
  result.scores = network_scores(standardize(X), result.loadings);
  result.dimension_count = result.membership.community_count;
  return result;
}

}  // namespace ndr::ega
