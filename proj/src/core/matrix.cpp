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

#include "core/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ndr {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

bool is_missing(const std::string& cell) { return cell.empty() || cell == "NA"; }

// Strict full-string parse, locale-independent.
bool parse_double(const std::string& cell, double& out) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

void append_number(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  out.append(buf, ptr);
}

}  // namespace

LoadResult load_csv(const std::string& path, const std::string& target_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("empty file: " + path);

  const std::vector<std::string> header = split_line(lines[0]);
  const std::size_t ncols = header.size();
  if (ncols < 2) throw ParseError("header needs at least 2 columns: " + path);

  int target_idx = -1;
  if (!target_column.empty()) {
    for (std::size_t j = 0; j < ncols; ++j) {
      if (header[j] == target_column) target_idx = static_cast<int>(j);
    }
    if (target_idx < 0) throw InvalidArgument("target column not found: " + target_column);
  }

  std::vector<std::vector<std::string>> cells;
  cells.reserve(lines.size() - 1);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    std::vector<std::string> row = split_line(lines[r]);
    if (row.size() != ncols) {
      throw ParseError("row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) +
                       " fields, expected " + std::to_string(ncols));
    }
    cells.push_back(std::move(row));
  }

  // A column is numeric when every non-missing cell parses as a number.
  std::vector<bool> numeric(ncols, true);
  for (std::size_t j = 0; j < ncols; ++j) {
    for (const auto& row : cells) {
      double v;
      if (!is_missing(row[j]) && !parse_double(row[j], v)) {
        numeric[j] = false;
        break;
      }
    }
  }

  LoadResult result;
  std::vector<int> feature_idx;
  for (std::size_t j = 0; j < ncols; ++j) {
    if (static_cast<int>(j) == target_idx) continue;
    if (numeric[j]) {
      feature_idx.push_back(static_cast<int>(j));
    } else {
      result.dropped_columns.push_back(header[j]);
    }
  }

  // Listwise deletion over the surviving columns (features + target).
  std::vector<int> keep_rows;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    bool complete = true;
    for (int j : feature_idx) {
      if (is_missing(cells[r][j])) { complete = false; break; }
    }
    if (complete && target_idx >= 0 && is_missing(cells[r][target_idx])) complete = false;
    if (complete) keep_rows.push_back(static_cast<int>(r));
  }
  result.dropped_rows = cells.size() - keep_rows.size();
  if (keep_rows.size() < 3) {
    throw NumericError("fewer than 3 complete rows after listwise deletion: " + path);
  }

  MatrixXd values(static_cast<Index>(keep_rows.size()), static_cast<Index>(feature_idx.size()));
  for (std::size_t i = 0; i < keep_rows.size(); ++i) {
    for (std::size_t j = 0; j < feature_idx.size(); ++j) {
      double v;
      parse_double(cells[keep_rows[i]][feature_idx[j]], v);
      values(static_cast<Index>(i), static_cast<Index>(j)) = v;
    }
  }

  // Constant columns carry no information and would break standardization.
  std::vector<int> varying;
  for (std::size_t j = 0; j < feature_idx.size(); ++j) {
    const auto col = values.col(static_cast<Index>(j));
    if (col.maxCoeff() > col.minCoeff()) {
      varying.push_back(static_cast<int>(j));
    } else {
      result.dropped_columns.push_back(header[feature_idx[j]]);
    }
  }
  if (varying.empty()) throw NumericError("only zero-variance columns remain: " + path);
  if (varying.size() < 2) {
    throw NumericError("fewer than 2 numeric feature columns survive preprocessing: " + path);
  }

  result.data.values.resize(values.rows(), static_cast<Index>(varying.size()));
  for (std::size_t j = 0; j < varying.size(); ++j) {
    result.data.values.col(static_cast<Index>(j)) = values.col(varying[j]);
    result.data.column_names.push_back(header[feature_idx[varying[j]]]);
  }

  if (target_idx >= 0) {
    result.target_name = header[target_idx];
    result.target.reserve(keep_rows.size());
    for (int r : keep_rows) result.target.push_back(cells[r][target_idx]);
  }
  return result;
}

std::string csv_string(const std::vector<std::string>& column_names, const MatrixXd& values) {
  if (static_cast<Index>(column_names.size()) != values.cols()) {
    throw InvalidArgument("column name count does not match matrix width");
  }
  std::string out;
  for (std::size_t j = 0; j < column_names.size(); ++j) {
    if (j) out += ',';
    out += column_names[j];
  }
  out += '\n';
  for (Index i = 0; i < values.rows(); ++i) {
    for (Index j = 0; j < values.cols(); ++j) {
      if (j) out += ',';
      append_number(out, values(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& column_names,
               const MatrixXd& values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open file for writing: " + path);
  out << csv_string(column_names, values);
  if (!out) throw IoError("write failed: " + path);
}

Scaler fit_scaler(const MatrixXd& X) {
  const Index n = X.rows();
  if (n < 2) throw InvalidArgument("need at least 2 rows to fit a scaler");
  Scaler s;
  s.mean = X.colwise().mean();
  s.sd.resize(X.cols());
  for (Index j = 0; j < X.cols(); ++j) {
    const double ss = (X.col(j).array() - s.mean(j)).square().sum();
    s.sd(j) = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return s;
}

MatrixXd apply_scaler(const MatrixXd& X, const Scaler& s) {
  if (X.cols() != s.mean.size()) throw InvalidArgument("scaler width mismatch");
  MatrixXd Z(X.rows(), X.cols());
  for (Index j = 0; j < X.cols(); ++j) {
    if (s.sd(j) <= 0.0) {
      throw NumericError("zero-variance column " + std::to_string(j) + " cannot be standardized");
    }
    Z.col(j) = (X.col(j).array() - s.mean(j)) / s.sd(j);
  }
  return Z;
}

DataMatrix standardize(const DataMatrix& X) {
  DataMatrix out;
  out.values = apply_scaler(X.values, fit_scaler(X.values));
  out.column_names = X.column_names;
  return out;
}

CovarianceEstimate correlation(const DataMatrix& X) {
  if (X.rows() < 3) throw InvalidArgument("correlation needs at least 3 rows");
  const MatrixXd Z = apply_scaler(X.values, fit_scaler(X.values));
  const double n1 = static_cast<double>(X.rows() - 1);
  MatrixXd R = (Z.transpose() * Z) / n1;
  // Clamp rounding noise; keep the matrix exactly symmetric with unit diagonal.
  R = ((R + R.transpose()) / 2.0).eval();
  for (Index i = 0; i < R.rows(); ++i) {
    R(i, i) = 1.0;
    for (Index j = 0; j < R.cols(); ++j) {
      if (i != j) R(i, j) = std::clamp(R(i, j), -1.0, 1.0);
    }
  }
  return CovarianceEstimate{std::move(R), static_cast<int>(X.rows()), true};
}

CovarianceEstimate covariance(const DataMatrix& X) {
  if (X.rows() < 3) throw InvalidArgument("covariance needs at least 3 rows");
  const MatrixXd centered = X.values.rowwise() - X.values.colwise().mean();
  const double n1 = static_cast<double>(X.rows() - 1);
  MatrixXd S = (centered.transpose() * centered) / n1;
  S = ((S + S.transpose()) / 2.0).eval();
  for (Index i = 0; i < S.rows(); ++i) {
    if (S(i, i) <= 0.0) {
      throw NumericError("zero-variance column " + std::to_string(i));
    }
  }
  return CovarianceEstimate{std::move(S), static_cast<int>(X.rows()), false};
}

Network precision_to_partial(const PrecisionMatrix& precision,
                             std::vector<std::string> node_names) {
  const MatrixXd& K = precision.K;
  const Index p = K.rows();
  if (K.cols() != p) throw InvalidArgument("precision matrix must be square");
  for (Index i = 0; i < p; ++i) {
    if (K(i, i) <= 0.0) throw NumericError("non-positive diagonal in precision matrix");
  }
  Network net;
  net.W = MatrixXd::Zero(p, p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      const double avg = (K(i, j) + K(j, i)) / 2.0;
      double r = avg == 0.0 ? 0.0 : -avg / std::sqrt(K(i, i) * K(j, j));
      r = std::clamp(r, -1.0, 1.0);
      net.W(i, j) = r;
      net.W(j, i) = r;
    }
  }
  if (node_names.empty()) {
    for (Index i = 0; i < p; ++i) node_names.push_back("V" + std::to_string(i + 1));
  }
  if (static_cast<Index>(node_names.size()) != p) {
    throw InvalidArgument("node name count does not match matrix size");
  }
  net.node_names = std::move(node_names);
  return net;
}

}  // namespace ndr
