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

#include "netdimred.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "core/baselines.hpp"
#include "core/bench.hpp"
#include "core/ega.hpp"
#include "core/graph.hpp"
#include "core/error.hpp"
#include "core/matrix.hpp"
#include "core/rng.hpp"
#include "core/uva.hpp"

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

ndr_status fail(ndr_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Translates core exceptions into stable status codes.
template <typename Fn>
ndr_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ndr::InvalidArgument& e) {
    return fail(NDR_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const ndr::IoError& e) {
    return fail(NDR_ERROR_IO, e.what());
  } catch (const ndr::ParseError& e) {
    return fail(NDR_ERROR_PARSE, e.what());
  } catch (const ndr::NumericError& e) {
    return fail(NDR_ERROR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(NDR_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(NDR_ERROR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json loadings_to_json(const ndr::MatrixXd& m) {
  json rows = json::array();
  for (ndr::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (ndr::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

struct ndr_dataset {
  ndr::LoadResult loaded;
};

struct ndr_reduction {
  ndr::MatrixXd scores;
  std::vector<std::string> column_names;
  std::string metadata_json;
};

extern "C" {

const char* ndr_version(void) { return "0.1.0"; }

const char* ndr_status_name(ndr_status status) {
  switch (status) {
    case NDR_OK: return "ok";
    case NDR_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case NDR_ERROR_IO: return "io_error";
    case NDR_ERROR_PARSE: return "parse_error";
    case NDR_ERROR_NUMERIC: return "numeric_error";
    case NDR_ERROR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* ndr_last_error(void) { return g_last_error.c_str(); }

ndr_status ndr_dataset_load_csv(const char* path, const char* target_column, ndr_dataset** out) {
  if (path == nullptr || out == nullptr) {
    return fail(NDR_ERROR_INVALID_ARGUMENT, "path and out must be non-null");
  }
  return guarded([&]() {
    auto dataset = std::make_unique<ndr_dataset>();
    dataset->loaded = ndr::load_csv(path, target_column == nullptr ? "" : target_column);
    *out = dataset.release();
    return NDR_OK;
  });
}

void ndr_dataset_free(ndr_dataset* dataset) { delete dataset; }

int ndr_dataset_rows(const ndr_dataset* dataset) {
  return dataset == nullptr ? -1 : static_cast<int>(dataset->loaded.data.rows());
}

int ndr_dataset_cols(const ndr_dataset* dataset) {
  return dataset == nullptr ? -1 : static_cast<int>(dataset->loaded.data.cols());
}

const char* ndr_dataset_column_name(const ndr_dataset* dataset, int column) {
  if (dataset == nullptr || column < 0 ||
      column >= static_cast<int>(dataset->loaded.data.column_names.size())) {
    return nullptr;
  }
  return dataset->loaded.data.column_names[column].c_str();
}

int ndr_dataset_has_target(const ndr_dataset* dataset) {
  return dataset != nullptr && !dataset->loaded.target.empty() ? 1 : 0;
}

const char* ndr_dataset_target_value(const ndr_dataset* dataset, int row) {
  if (dataset == nullptr || row < 0 ||
      row >= static_cast<int>(dataset->loaded.target.size())) {
    return nullptr;
  }
  return dataset->loaded.target[row].c_str();
}

ndr_status ndr_reduce(const ndr_dataset* dataset, const char* options_json, ndr_reduction** out) {
  if (dataset == nullptr || out == nullptr) {
    return fail(NDR_ERROR_INVALID_ARGUMENT, "dataset and out must be non-null");
  }
  return guarded([&]() {
    json opts = json::object();
    if (options_json != nullptr && options_json[0] != '\0') {
      try {
        opts = json::parse(options_json);
      } catch (const json::exception& e) {
        throw ndr::ParseError(std::string("invalid options JSON: ") + e.what());
      }
    }
    const std::string method = opts.value("method", "none");
    const std::uint64_t seed = opts.value("seed", 42ull);
    const ndr::DataMatrix& data = dataset->loaded.data;

    auto reduction = std::make_unique<ndr_reduction>();
    json meta{{"method", method}, {"seed", seed}};

    if (method == "none") {
      reduction->scores = data.values;
      reduction->column_names = data.column_names;
      meta["columns"] = data.column_names;
    } else if (method == "pca" || method == "ica") {
      ndr::baselines::PcaOptions popts;
      if (opts.contains("k") && !opts["k"].is_null()) popts.k = opts["k"].get<int>();
      popts.variance_threshold = opts.value("variance_threshold", 0.8);
      if (opts.value("k_rule", "cumulative_variance") == "acceleration") {
        popts.rule = ndr::baselines::KRule::acceleration;
      }
      const ndr::baselines::PcaModel pca = ndr::baselines::pca_fit(data, popts);
      if (method == "pca") {
        reduction->scores = ndr::baselines::pca_transform(pca, data);
        for (int i = 1; i <= pca.k; ++i) {
          reduction->column_names.push_back("pca_" + std::to_string(i));
        }
        json eig = json::array();
        for (ndr::Index i = 0; i < pca.full_spectrum.size(); ++i) eig.push_back(pca.full_spectrum(i));
        meta["k"] = pca.k;
        meta["eigenvalues"] = eig;
        meta["loadings"] = loadings_to_json(pca.components);
      } else {
        const ndr::baselines::IcaModel ica = ndr::baselines::ica_fit(data, pca.k, seed);
        reduction->scores = ndr::baselines::ica_transform(ica, data);
        for (int i = 1; i <= ica.k; ++i) {
          reduction->column_names.push_back("ica_" + std::to_string(i));
        }
        meta["k"] = ica.k;
        meta["converged"] = ica.converged;
        meta["unmixing"] = loadings_to_json(ica.unmixing);
      }
    } else if (method == "ega") {
      ndr::ega::EgaOptions eopts;
      eopts.gamma = opts.value("gamma", 0.5);
      eopts.seed = seed;
      if (opts.value("algorithm", "walktrap") == "louvain") {
        eopts.algorithm = ndr::ega::Algorithm::louvain;
      }
      const ndr::ega::EgaResult result = ndr::ega::ega(data, eopts);
      reduction->scores = result.scores;
      for (int f = 1; f <= result.dimension_count; ++f) {
        reduction->column_names.push_back("ega_dim_" + std::to_string(f));
      }
      json membership = json::object();
      for (ndr::Index i = 0; i < data.cols(); ++i) {
        membership[data.column_names[i]] = result.membership.assignment[i];
      }
      json path = json::array();
      for (const auto& point : result.glasso_path) {
        path.push_back(json{{"lambda", point.lambda},
                            {"edges", point.edges},
                            {"loglik", point.loglik},
                            {"ebic", point.ebic},
                            {"converged", point.converged}});
      }
      meta["membership"] = membership;
      meta["dimensions"] = result.dimension_count;
      meta["all_isolated"] = result.all_isolated;
      meta["selected_lambda"] = result.selected_lambda;
      meta["glasso_path"] = path;
      meta["loadings"] = loadings_to_json(result.loadings.standardized);
      meta["edge_list"] = ndr::graph::edge_list(result.network);
    } else if (method == "uva") {
      ndr::uva::UvaOptions uopts;
      uopts.threshold = opts.value("threshold", 0.25);
      if (opts.value("combine", "sum") == "mean") uopts.combine = ndr::uva::Combine::mean;
      uopts.glasso.gamma = opts.value("gamma", 0.5);
      const ndr::uva::UvaResult result = ndr::uva::uva(data, uopts);
      reduction->scores = result.reduced.values;
      reduction->column_names = result.reduced.column_names;
      json map = json::object();
      for (const auto& group : result.map.groups) {
        json members = json::array();
        for (int m : group.members) members.push_back(data.column_names[m]);
        map[group.name] = json{{"members", members},
                               {"signs", group.signs},
                               {"method", result.map.method == ndr::uva::Combine::sum ? "sum" : "mean"}};
      }
      meta["reduction_map"] = map;
      meta["iterations"] = result.map.iterations;
      meta["degenerate"] = result.degenerate;
    } else {
      throw ndr::InvalidArgument("unknown method: " + method);
    }

    reduction->metadata_json = meta.dump(2);
    *out = reduction.release();
    return NDR_OK;
  });
}

int ndr_reduction_rows(const ndr_reduction* reduction) {
  return reduction == nullptr ? -1 : static_cast<int>(reduction->scores.rows());
}

int ndr_reduction_cols(const ndr_reduction* reduction) {
  return reduction == nullptr ? -1 : static_cast<int>(reduction->scores.cols());
}

const char* ndr_reduction_column_name(const ndr_reduction* reduction, int column) {
  if (reduction == nullptr || column < 0 ||
      column >= static_cast<int>(reduction->column_names.size())) {
    return nullptr;
  }
  return reduction->column_names[column].c_str();
}

ndr_status ndr_reduction_copy_scores(const ndr_reduction* reduction, double* buffer,
                                     size_t buffer_length) {
  if (reduction == nullptr || buffer == nullptr) {
    return fail(NDR_ERROR_INVALID_ARGUMENT, "reduction and buffer must be non-null");
  }
  const size_t needed =
      static_cast<size_t>(reduction->scores.rows()) * static_cast<size_t>(reduction->scores.cols());
  if (buffer_length < needed) {
    return fail(NDR_ERROR_INVALID_ARGUMENT, "buffer too small: need " + std::to_string(needed));
  }
  for (ndr::Index i = 0; i < reduction->scores.rows(); ++i) {
    for (ndr::Index j = 0; j < reduction->scores.cols(); ++j) {
      buffer[static_cast<size_t>(i) * reduction->scores.cols() + j] = reduction->scores(i, j);
    }
  }
  return NDR_OK;
}

ndr_status ndr_reduction_metadata_json(const ndr_reduction* reduction, char** out) {
  if (reduction == nullptr || out == nullptr) {
    return fail(NDR_ERROR_INVALID_ARGUMENT, "reduction and out must be non-null");
  }
  *out = copy_string(reduction->metadata_json);
  return NDR_OK;
}

void ndr_reduction_free(ndr_reduction* reduction) { delete reduction; }

ndr_status ndr_bench_run(const char* config_json, char** report_json) {
  if (config_json == nullptr || report_json == nullptr) {
    return fail(NDR_ERROR_INVALID_ARGUMENT, "config and out must be non-null");
  }
  return guarded([&]() {
    const ndr::bench::PipelineConfig config = ndr::bench::config_from_json(config_json);
    const ndr::bench::BenchReport report = ndr::bench::run_pipeline(config);
    *report_json = copy_string(ndr::bench::report_to_json(report));
    return NDR_OK;
  });
}

ndr_status ndr_compare_run(const char* config_json, char** report_json) {
  if (config_json == nullptr || report_json == nullptr) {
    return fail(NDR_ERROR_INVALID_ARGUMENT, "config and out must be non-null");
  }
  return guarded([&]() {
    const ndr::bench::CompareSpec spec = ndr::bench::compare_spec_from_json(config_json);
    const ndr::bench::BenchReport report = ndr::bench::compare(spec.pipelines, spec.jobs);
    *report_json = copy_string(ndr::bench::report_to_json(report));
    return NDR_OK;
  });
}

ndr_status ndr_report_summary_csv(const char* report_json, char** csv) {
  if (report_json == nullptr || csv == nullptr) {
    return fail(NDR_ERROR_INVALID_ARGUMENT, "report and out must be non-null");
  }
  return guarded([&]() {
    json j;
    try {
      j = json::parse(report_json);
    } catch (const json::exception& e) {
      throw ndr::ParseError(std::string("invalid report JSON: ") + e.what());
    }
    ndr::bench::BenchReport report;
    for (const auto& s : j.value("summaries", json::array())) {
      ndr::bench::Summary summary;
      summary.dataset = s.value("dataset", "");
      summary.method = s.value("method", "");
      summary.learner = s.value("learner", "");
      summary.metric = s.value("metric", "");
      summary.mean = s.value("mean", 0.0);
      summary.std_error = s.value("std_error", 0.0);
      summary.folds = s.value("folds", 0);
      summary.holdout = s.value("holdout", 0.0);
      summary.best_penalty = s.value("best_penalty", 0.0);
      report.summaries.push_back(summary);
    }
    *csv = copy_string(ndr::bench::report_summary_csv(report));
    return NDR_OK;
  });
}

void ndr_string_free(char* text) { delete[] text; }

}  // extern "C"
