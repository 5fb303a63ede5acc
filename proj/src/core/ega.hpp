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

#include "core/glasso.hpp"
#include "core/graph.hpp"
#include "core/matrix.hpp"

namespace ndr::ega {

// Node-by-community loadings. raw(i, f) sums |w_ij| over nodes j in
// community f; standardized divides each column by the square root of its
// column sum, so standardized * sqrt(colsum) == raw holds exactly.
struct LoadingMatrix {
  MatrixXd raw;           // p x F, entries >= 0
  MatrixXd standardized;  // p x F
  graph::Membership membership;
};

LoadingMatrix network_loadings(const Network& net, const graph::Membership& m);

// Weighted composite scores, one column per community. Variables assigned to
// a community contribute with relative weights proportional to their
// standardized loading divided by their standard deviation; cross-loadings
// never contribute. A multi-member community whose weights sum to zero is an
// error; a zero-loading singleton passes its variable through with weight 1.
MatrixXd network_scores(const DataMatrix& X, const LoadingMatrix& loadings);

enum class Algorithm { walktrap, louvain };

struct EgaOptions {
  Algorithm algorithm = Algorithm::walktrap;
  double gamma = 0.5;
  std::uint64_t seed = 42;
  int walk_steps = 4;
  glasso::EbicglassoOptions glasso;
};

struct EgaResult {
  Network network;
  graph::Membership membership;
  LoadingMatrix loadings;
  MatrixXd scores;  // n x F
  int dimension_count = 0;
  bool all_isolated = false;  // empty network: every node its own dimension
  std::vector<glasso::PathPoint> glasso_path;
  double selected_lambda = 0.0;
};

// Full pipeline: correlation -> EBICglasso -> community detection ->
// loadings -> scores on the standardized data.
EgaResult ega(const DataMatrix& X, const EgaOptions& options = {});

}  // namespace ndr::ega
