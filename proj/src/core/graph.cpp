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

#include "core/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "core/rng.hpp"

namespace ndr::graph {

namespace {

void validate_network(const Network& net) {
  if (net.W.rows() != net.W.cols()) throw InvalidArgument("network matrix must be square");
  if (net.W.rows() < 1) throw InvalidArgument("network must have at least one node");
}

// Working state for one Louvain level on a graph that may carry self-loops
// (aggregated communities keep their internal weight on the diagonal).
struct LouvainLevel {
  const MatrixXd& W;
  double two_d = 0.0;
  std::vector<double> degree;       // row sums, self-loop counted once
  std::vector<double> sigma_total;  // sum of degrees per community
  std::vector<int> node_to_comm;

  explicit LouvainLevel(const MatrixXd& w) : W(w) {
    const Index n = w.rows();
    degree.resize(n);
    node_to_comm.resize(n);
    for (Index i = 0; i < n; ++i) {
      degree[i] = w.row(i).sum();
      node_to_comm[i] = static_cast<int>(i);
      two_d += degree[i];
    }
    sigma_total = degree;
  }

  // One full local-move phase. Returns true when any node changed community.
  bool local_moves(Rng& rng) {
    const Index n = W.rows();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    bool any_move = false;
    bool moved = true;
    int passes = 0;
    while (moved && passes < 10000) {
      moved = false;
      ++passes;
      for (std::size_t node : order) {
        const Index i = static_cast<Index>(node);
        if (degree[i] == 0.0) continue;  // isolated nodes never move
        const int old_comm = node_to_comm[i];
        sigma_total[old_comm] -= degree[i];

        // Weights from i into each neighboring community (self excluded).
        std::map<int, double> links;
        links[old_comm] += 0.0;
        for (Index j = 0; j < W.rows(); ++j) {
          if (j == i || W(i, j) == 0.0) continue;
          links[node_to_comm[j]] += W(i, j);
        }

        // Gain of joining community c, up to constants shared by all
        // choices: k_{i,c} - d_i * sigma_c / 2D.
        int best_comm = old_comm;
        double best_gain = links[old_comm] - degree[i] * sigma_total[old_comm] / two_d;
        for (const auto& [comm, k_ic] : links) {
          if (comm == old_comm) continue;
          const double gain = k_ic - degree[i] * sigma_total[comm] / two_d;
          if (gain > best_gain) {
            best_gain = gain;
            best_comm = comm;
          }
        }

        sigma_total[best_comm] += degree[i];
        node_to_comm[i] = best_comm;
        if (best_comm != old_comm) {
          moved = true;
          any_move = true;
        }
      }
    }
    return any_move;
  }
};

// Collapses each community into one node; within-community weight becomes a
// self-loop so degrees and total weight are preserved.
MatrixXd aggregate(const MatrixXd& W, const std::vector<int>& node_to_comm, int comm_count) {
  MatrixXd agg = MatrixXd::Zero(comm_count, comm_count);
  for (Index i = 0; i < W.rows(); ++i) {
    for (Index j = 0; j < W.cols(); ++j) {
      if (W(i, j) != 0.0) agg(node_to_comm[i], node_to_comm[j]) += W(i, j);
    }
  }
  return agg;
}

// First-occurrence renumbering of arbitrary community ids to 0..F-1.
std::vector<int> renumber(const std::vector<int>& raw) {
  std::map<int, int> mapping;
  std::vector<int> out(raw.size());
  int next = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto [it, inserted] = mapping.try_emplace(raw[i], next);
    if (inserted) ++next;
    out[i] = it->second;
  }
  return out;
}

void append_number(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  out.append(buf, ptr);
}

}  // namespace

void validate_membership(const Membership& m, Index p) {
  if (static_cast<Index>(m.assignment.size()) != p) {
    throw InvalidArgument("membership size does not match node count");
  }
  if (m.community_count < 1 || m.community_count > static_cast<int>(p)) {
    throw InvalidArgument("community count out of range");
  }
  std::vector<bool> seen(m.community_count, false);
  for (int c : m.assignment) {
    if (c < 1 || c > m.community_count) throw InvalidArgument("community index out of range");
    seen[c - 1] = true;
  }
  for (bool s : seen) {
    if (!s) throw InvalidArgument("empty community in membership");
  }
}

Membership canonical_membership(std::vector<int> raw_assignment) {
  const std::vector<int> zero_based = renumber(raw_assignment);
  Membership m;
  m.assignment.resize(zero_based.size());
  int max_comm = 0;
  for (std::size_t i = 0; i < zero_based.size(); ++i) {
    m.assignment[i] = zero_based[i] + 1;
    max_comm = std::max(max_comm, m.assignment[i]);
  }
  m.community_count = max_comm;
  return m;
}

double strength(const Network& net, Index i) {
  validate_network(net);
  if (i < 0 || i >= net.size()) throw InvalidArgument("node index out of range");
  return net.W.row(i).sum();
}

double strength_abs(const Network& net, Index i) {
  validate_network(net);
  if (i < 0 || i >= net.size()) throw InvalidArgument("node index out of range");
  return net.W.row(i).cwiseAbs().sum();
}

double total_weight(const Network& net) {
  validate_network(net);
  return net.W.sum() / 2.0;
}

double modularity(const Network& net, const Membership& m) {
  validate_network(net);
  const Index p = net.size();
  validate_membership(m, p);
  const double two_d = net.W.sum();
  if (two_d <= 0.0) throw NumericError("total edge weight must be positive");

  VectorXd degree = net.W.rowwise().sum();
  std::vector<double> within(m.community_count, 0.0);
  std::vector<double> degree_sum(m.community_count, 0.0);
  for (Index i = 0; i < p; ++i) {
    degree_sum[m.assignment[i] - 1] += degree(i);
    for (Index j = 0; j < p; ++j) {
      if (m.assignment[i] == m.assignment[j]) within[m.assignment[i] - 1] += net.W(i, j);
    }
  }
  double q = 0.0;
  for (int c = 0; c < m.community_count; ++c) {
    q += within[c] / two_d - (degree_sum[c] / two_d) * (degree_sum[c] / two_d);
  }
  return q;
}

Membership louvain(const Network& net, std::uint64_t seed) {
  validate_network(net);
  const Index p = net.size();
  if (p == 1) return Membership{{1}, 1};
  if (net.W.sum() <= 0.0) throw InvalidArgument("louvain requires positive total weight");

  Rng rng(seed);
  MatrixXd working = net.W;
  // node_map[i] = community of original node i in the current working graph.
  std::vector<int> node_map(p);
  std::iota(node_map.begin(), node_map.end(), 0);

  for (int level = 0; level < static_cast<int>(p); ++level) {
    LouvainLevel state(working);
    const bool improved = state.local_moves(rng);
    if (!improved) break;

    const std::vector<int> compact = renumber(state.node_to_comm);
    const int comm_count = 1 + *std::max_element(compact.begin(), compact.end());
    for (Index i = 0; i < p; ++i) node_map[i] = compact[node_map[i]];
    if (comm_count == working.rows()) break;
    working = aggregate(working, compact, comm_count);
    if (comm_count == 1) break;
  }
  return canonical_membership(node_map);
}

MatrixXd walk_transition(const Network& net) {
  validate_network(net);
  const Index p = net.size();
  const MatrixXd A = net.W.cwiseAbs();
  MatrixXd P = MatrixXd::Zero(p, p);
  for (Index i = 0; i < p; ++i) {
    const double d = A.row(i).sum();
    if (d <= 0.0) throw NumericError("node " + std::to_string(i) + " has zero strength");
    P.row(i) = A.row(i) / d;
  }
  return P;
}

Membership walktrap(const Network& net, int steps) {
  validate_network(net);
  if (steps < 1) throw InvalidArgument("walk length must be at least 1");
  const Index p = net.size();
  if (p == 1) return Membership{{1}, 1};

  const MatrixXd A = net.W.cwiseAbs();
  std::vector<Index> active;  // nodes with at least one edge
  for (Index i = 0; i < p; ++i) {
    if (A.row(i).sum() > 0.0) active.push_back(i);
  }
  if (active.empty()) throw InvalidArgument("walktrap requires at least one edge");
  if (net.W.sum() <= 0.0) throw InvalidArgument("walktrap requires positive total weight");

  const Index m = static_cast<Index>(active.size());
  MatrixXd sub = MatrixXd::Zero(m, m);
  for (Index a = 0; a < m; ++a) {
    for (Index b = 0; b < m; ++b) sub(a, b) = A(active[a], active[b]);
  }
  VectorXd degree = sub.rowwise().sum();
  MatrixXd P(m, m);
  for (Index a = 0; a < m; ++a) P.row(a) = sub.row(a) / degree(a);

  MatrixXd Pt = P;
  for (int s = 1; s < steps; ++s) Pt = (Pt * P).eval();

  // Squared walk distance between nodes, weighted by inverse strength.
  MatrixXd dist2 = MatrixXd::Zero(m, m);
  for (Index a = 0; a < m; ++a) {
    for (Index b = a + 1; b < m; ++b) {
      double d2 = 0.0;
      for (Index k = 0; k < m; ++k) {
        const double diff = Pt(a, k) - Pt(b, k);
        d2 += diff * diff / degree(k);
      }
      dist2(a, b) = d2;
      dist2(b, a) = d2;
    }
  }

  // Ward agglomeration (Lance-Williams on squared distances), restricted to
  // communities that share at least one edge. Each merge level produces a
  // candidate partition; the best signed-modularity cut wins. Isolated nodes
  // stay singletons in every candidate.
  std::vector<int> cluster(m);
  std::iota(cluster.begin(), cluster.end(), 0);
  std::vector<double> size(m, 1.0);
  std::vector<bool> alive(m, true);
  std::vector<std::vector<bool>> adjacent(m, std::vector<bool>(m, false));
  for (Index a = 0; a < m; ++a) {
    for (Index b = 0; b < m; ++b) {
      if (a != b && sub(a, b) != 0.0) adjacent[a][b] = true;
    }
  }

  auto evaluate = [&](const std::vector<int>& cl) {
    std::vector<int> full(p, -1);
    for (Index a = 0; a < m; ++a) full[active[a]] = cl[a];
    int next = m;
    for (Index i = 0; i < p; ++i) {
      if (full[i] < 0) full[i] = next++;
    }
    const Membership mem = canonical_membership(full);
    return std::pair<double, Membership>(modularity(net, mem), mem);
  };

  auto [best_q, best_mem] = evaluate(cluster);
  for (Index merge = 0; merge + 1 < m; ++merge) {
    Index bi = -1, bj = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (Index a = 0; a < m; ++a) {
      if (!alive[a]) continue;
      for (Index b = a + 1; b < m; ++b) {
        if (!alive[b] || !adjacent[a][b]) continue;
        if (dist2(a, b) < best_d) {
          best_d = dist2(a, b);
          bi = a;
          bj = b;
        }
      }
    }
    if (bi < 0) break;  // disconnected remainder: dendrogram ends here
    // Lance-Williams update for Ward's criterion against every survivor.
    for (Index k = 0; k < m; ++k) {
      if (!alive[k] || k == bi || k == bj) continue;
      const double nij = size[bi] + size[bj] + size[k];
      const double d2 = ((size[bi] + size[k]) * dist2(bi, k) +
                         (size[bj] + size[k]) * dist2(bj, k) - size[k] * dist2(bi, bj)) /
                        nij;
      dist2(bi, k) = d2;
      dist2(k, bi) = d2;
    }
    size[bi] += size[bj];
    alive[bj] = false;
    for (Index a = 0; a < m; ++a) {
      if (cluster[a] == static_cast<int>(bj)) cluster[a] = static_cast<int>(bi);
      adjacent[a][bi] = adjacent[a][bi] || adjacent[a][bj];
      adjacent[bi][a] = adjacent[a][bi];
    }
    adjacent[bi][bi] = false;
    auto [q, mem] = evaluate(cluster);
    if (q > best_q) {
      best_q = q;
      best_mem = std::move(mem);
    }
  }
  return best_mem;
}

std::string edge_list(const Network& net) {
  validate_network(net);
  std::string out;
  for (Index i = 0; i < net.size(); ++i) {
    for (Index j = i + 1; j < net.size(); ++j) {
      if (net.W(i, j) == 0.0) continue;
      out += net.node_names[i];
      out += ',';
      out += net.node_names[j];
      out += ',';
      append_number(out, net.W(i, j));
      out += '\n';
    }
  }
  return out;
}

}  // namespace ndr::graph
