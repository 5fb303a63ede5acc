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

#include "core/uva.hpp"

#include <algorithm>
#include <cmath>

namespace ndr::uva {

MatrixXd wto(const Network& net) {
  const Index p = net.size();
  const MatrixXd A = net.W.cwiseAbs();
  const VectorXd d = A.rowwise().sum();
  const MatrixXd shared = A * A;  // sum_u a_iu * a_uj; zero diagonal keeps u != i,j

  MatrixXd omega = MatrixXd::Zero(p, p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      const double denom = std::min(d(i), d(j)) + 1.0 - A(i, j);
      if (denom > 1e-12) {
        const double w = (shared(i, j) + A(i, j)) / denom;
        omega(i, j) = w;
        omega(j, i) = w;
      }
    }
  }
  return omega;
}

MatrixXd UvaResult::transform(const MatrixXd& X) const {
  if (X.cols() != scaler.mean.size()) throw InvalidArgument("column count mismatch");
  const MatrixXd Z = apply_scaler(X, scaler);
  MatrixXd out(X.rows(), coefficients.cols());
  for (Index j = 0; j < coefficients.cols(); ++j) {
    if (passthrough[j] >= 0) {
      out.col(j) = X.col(passthrough[j]);
    } else {
      out.col(j) = (Z * coefficients.col(j)).array() + offsets(j);
    }
  }
  return out;
}

UvaResult uva(const DataMatrix& X, const UvaOptions& options) {
  if (options.threshold <= 0.0) throw InvalidArgument("threshold must be positive");
  const Index p = X.cols();
  const Index n = X.rows();

  UvaResult result;
  result.scaler = fit_scaler(X.values);
  result.map.method = options.combine;

  MatrixXd work = apply_scaler(X.values, result.scaler);
  std::vector<std::string> names = X.column_names;
  MatrixXd coeff = MatrixXd::Identity(p, p);
  VectorXd offset = VectorXd::Zero(p);
  std::vector<ReductionGroup> groups(p);
  for (Index i = 0; i < p; ++i) {
    groups[i] = ReductionGroup{names[i], {static_cast<int>(i)}, {1}};
  }

  const double divisor = options.combine == Combine::mean ? 2.0 : 1.0;
  int iterations = 0;

  while (work.cols() > 1) {
    DataMatrix current{work, names};
    const CovarianceEstimate S =
        options.glasso.use_correlation ? correlation(current) : covariance(current);
    double max_offdiag = 0.0;
    for (Index i = 0; i < S.size(); ++i) {
      for (Index j = i + 1; j < S.size(); ++j) {
        max_offdiag = std::max(max_offdiag, std::abs(S.S(i, j)));
      }
    }
    if (max_offdiag == 0.0) break;  // exactly uncorrelated: nothing to combine

    const Network net = glasso::ebicglasso_from_cov(S, names, options.glasso).network;
    const MatrixXd omega = wto(net);

    Index best_i = -1, best_j = -1;
    double best_omega = -1.0;
    for (Index i = 0; i < omega.rows(); ++i) {
      for (Index j = i + 1; j < omega.cols(); ++j) {
        if (omega(i, j) > best_omega) {
          best_omega = omega(i, j);
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best_omega < options.threshold) break;
    ++iterations;

    // Sign-align before combining: flip the partner when the pair is
    // negatively correlated so the composite does not cancel.
    const double r = work.col(best_i).dot(work.col(best_j)) / static_cast<double>(n - 1);
    const double sign_j = r < 0.0 ? -1.0 : 1.0;

    VectorXd combined = (work.col(best_i) + sign_j * work.col(best_j)) / divisor;
    const double mean = combined.mean();
    const double sd =
        std::sqrt((combined.array() - mean).square().sum() / static_cast<double>(n - 1));
    if (sd <= 0.0) throw NumericError("combined variable has zero variance");
    combined = ((combined.array() - mean) / sd).matrix();

    VectorXd new_coeff = (coeff.col(best_i) + sign_j * coeff.col(best_j)) / (divisor * sd);
    const double new_offset = ((offset(best_i) + sign_j * offset(best_j)) / divisor - mean) / sd;

    ReductionGroup merged;
    merged.name = names[best_i] + "+" + names[best_j];
    merged.members = groups[best_i].members;
    merged.signs = groups[best_i].signs;
    for (std::size_t k = 0; k < groups[best_j].members.size(); ++k) {
      merged.members.push_back(groups[best_j].members[k]);
      merged.signs.push_back(static_cast<int>(sign_j) * groups[best_j].signs[k]);
    }

    // The composite takes the lower slot; the higher slot is removed.
    const Index q = work.cols();
    MatrixXd next_work(n, q - 1);
    MatrixXd next_coeff(p, q - 1);
    VectorXd next_offset(q - 1);
    std::vector<std::string> next_names;
    std::vector<ReductionGroup> next_groups;
    Index out = 0;
    for (Index c = 0; c < q; ++c) {
      if (c == best_j) continue;
      if (c == best_i) {
        next_work.col(out) = combined;
        next_coeff.col(out) = new_coeff;
        next_offset(out) = new_offset;
        next_names.push_back(merged.name);
        next_groups.push_back(merged);
      } else {
        next_work.col(out) = work.col(c);
        next_coeff.col(out) = coeff.col(c);
        next_offset(out) = offset(c);
        next_names.push_back(names[c]);
        next_groups.push_back(groups[c]);
      }
      ++out;
    }
    work = std::move(next_work);
    coeff = std::move(next_coeff);
    offset = std::move(next_offset);
    names = std::move(next_names);
    groups = std::move(next_groups);
  }

  result.degenerate = work.cols() == 1;
  result.map.iterations = iterations;
  result.map.groups = groups;
  result.coefficients = std::move(coeff);
  result.offsets = std::move(offset);

  // Untouched variables pass through as raw input; composites keep the
  // standardized working values.
  result.passthrough.assign(groups.size(), -1);
  result.reduced.values.resize(n, work.cols());
  for (Index j = 0; j < work.cols(); ++j) {
    if (groups[j].members.size() == 1) {
      result.passthrough[j] = groups[j].members[0];
      result.reduced.values.col(j) = X.values.col(groups[j].members[0]);
    } else {
      result.reduced.values.col(j) = work.col(j);
    }
    result.reduced.column_names.push_back(names[j]);
  }
  return result;
}

}  // namespace ndr::uva
