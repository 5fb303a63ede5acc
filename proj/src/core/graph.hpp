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

namespace ndr::graph {

// Assignment of each node to one of the communities 1..community_count.
// Communities are numbered by first occurrence over node order, so two
// structurally identical partitions compare equal.
struct Membership {
  std::vector<int> assignment;  // values in 1..community_count
  int community_count = 0;
};

// Throws InvalidArgument when the assignment is inconsistent (out-of-range
// index, empty community, size mismatch with p).
void validate_membership(const Membership& m, Index p);

// Renumbers communities by first occurrence; fills community_count.
Membership canonical_membership(std::vector<int> raw_assignment);

// Signed sum of edge weights at node i.
double strength(const Network& net, Index i);

// Sum of absolute edge weights at node i; used where walk probabilities or
// loadings need nonnegative mass.
double strength_abs(const Network& net, Index i);

// Total edge weight D = (1/2) sum_ij w_ij.
double total_weight(const Network& net);

// Newman modularity of the partition, evaluated on signed weights with
// diagonal expectation terms included. Throws when D <= 0.
double modularity(const Network& net, const Membership& m);

// Louvain: seeded local moves to maximal modularity gain, then community
// aggregation, repeated until modularity cannot increase. Deterministic
// given (network, seed). Nodes without edges keep singleton communities.
Membership louvain(const Network& net, std::uint64_t seed);

// Row-stochastic transition matrix on absolute weights, restricted to nodes
// with positive absolute strength. Exposed for verification.
MatrixXd walk_transition(const Network& net);

// Walktrap: t-step random-walk distances on absolute weights, Ward
// agglomeration, dendrogram cut at maximum signed modularity. Deterministic.
Membership walktrap(const Network& net, int steps = 4);

// Upper-triangle nonzero edges as "name_i,name_j,w_ij" lines.
std::string edge_list(const Network& net);

}  // namespace ndr::graph
