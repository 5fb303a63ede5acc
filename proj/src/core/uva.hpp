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

#include <string>
#include <vector>

#include "core/glasso.hpp"
#include "core/matrix.hpp"

namespace ndr::uva {

// Weighted topological overlap on absolute edge weights: the similarity of
// two nodes' connection profiles. Symmetric with zero diagonal.
MatrixXd wto(const Network& net);

enum class Combine { sum, mean };

// One output column of the reduction: the input variables it aggregates and
// the sign each contributes with. Singleton groups pass their variable
// through untouched.
struct ReductionGroup {
  std::string name;
  std::vector<int> members;  // input column indices
  std::vector<int> signs;    // +1 / -1 per member
};

struct ReductionMap {
  std::vector<ReductionGroup> groups;  // one per output column, input order preserved
  Combine method = Combine::sum;
  int iterations = 0;
};

struct UvaOptions {
  double threshold = 0.25;
  Combine combine = Combine::sum;
  glasso::EbicglassoOptions glasso;
};

struct UvaResult {
  DataMatrix reduced;
  ReductionMap map;
  bool degenerate = false;  // collapsed all the way to one column

  // Replay support: composite output columns are affine maps of the
  // standardized inputs; passthrough columns copy the raw input.
  Scaler scaler;                 // fitted on the input the reduction saw
  MatrixXd coefficients;         // p_in x p_out over standardized inputs
  VectorXd offsets;              // p_out
  std::vector<int> passthrough;  // input index, or -1 for composites

  // Applies the fitted reduction to new rows with the stored statistics.
  MatrixXd transform(const MatrixXd& X) const;
};

// Iteratively estimates an EBICglasso network, computes wto, and combines
// the highest-overlap pair (sign-aligned, then re-standardized) until every
// overlap is below the threshold. Ties break toward the lowest index pair.
UvaResult uva(const DataMatrix& X, const UvaOptions& options = {});

}  // namespace ndr::uva
