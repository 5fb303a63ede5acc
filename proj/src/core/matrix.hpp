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

#include <optional>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/types.hpp"

namespace ndr {

// Result of loading a CSV: numeric features plus the (never standardized)
// target column when one was requested.
struct LoadResult {
  DataMatrix data;
  std::string target_name;
  std::vector<std::string> target;  // empty when no target was requested
  std::size_t dropped_rows = 0;     // listwise deletion count
  std::vector<std::string> dropped_columns;  // categorical or constant
};

// Loads a comma-delimited, UTF-8, header-row CSV. Empty cells and "NA" are
// missing. Rows with any missing cell in a surviving column are dropped;
// non-numeric columns other than the target are dropped; constant feature
// columns are dropped. Fails if fewer than 3 complete rows or fewer than 2
// feature columns remain.
LoadResult load_csv(const std::string& path, const std::string& target_column = "");

// Writes a CSV with shortest round-trip number formatting, so identical
// matrices serialize to identical bytes.
void write_csv(const std::string& path, const std::vector<std::string>& column_names,
               const MatrixXd& values);
std::string csv_string(const std::vector<std::string>& column_names, const MatrixXd& values);

Scaler fit_scaler(const MatrixXd& X);
MatrixXd apply_scaler(const MatrixXd& X, const Scaler& s);

// Each column to mean 0 and sample standard deviation 1 (n-1 divisor).
// Throws NumericError on a zero-variance column.
DataMatrix standardize(const DataMatrix& X);

// Pearson correlation matrix; requires n >= 3 and positive column variances.
CovarianceEstimate correlation(const DataMatrix& X);

// Sample covariance matrix (n-1 divisor).
CovarianceEstimate covariance(const DataMatrix& X);

// Partial correlations from a precision matrix: off-diagonals are
// -k_ij / sqrt(k_ii * k_jj), diagonal forced to zero, result symmetric.
Network precision_to_partial(const PrecisionMatrix& precision,
                             std::vector<std::string> node_names = {});

}  // namespace ndr
