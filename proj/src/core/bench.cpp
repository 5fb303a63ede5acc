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

#include "core/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "core/learners.hpp"
#include "core/rng.hpp"

namespace ndr::bench {

namespace {

using nlohmann::json;

std::string dataset_stem(const std::string& path) {
  std::size_t slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  std::size_t dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return name;
}

// Scaler that tolerates constant columns (scale 1) so a degenerate fold
// cannot abort a whole benchmark; constant features carry no signal anyway.
Scaler tolerant_scaler(const MatrixXd& X) {
  Scaler s = fit_scaler(X);
  for (Index j = 0; j < s.sd.size(); ++j) {
    if (s.sd(j) <= 0.0) s.sd(j) = 1.0;
  }
  return s;
}

MatrixXd select_rows(const MatrixXd& X, const std::vector<int>& rows) {
  MatrixXd out(static_cast<Index>(rows.size()), X.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = X.row(rows[i]);
  return out;
}

// A reduction fitted on training rows, applicable to any rows.
struct FittedReducer {
  std::vector<std::string> score_names;
  std::function<MatrixXd(const MatrixXd&)> apply;
};

FittedReducer fit_reducer(Method method, const MatrixXd& train,
                          const std::vector<std::string>& names, const MethodOptions& options,
                          std::uint64_t seed) {
  FittedReducer reducer;
  const DataMatrix train_data{train, names};
  switch (method) {
    case Method::none: {
      reducer.score_names = names;
      const Index p = train.cols();
      reducer.apply = [p](const MatrixXd& X) {
        if (X.cols() != p) throw InvalidArgument("column count mismatch");
        return X;
      };
      break;
    }
    case Method::pca: {
      auto model = std::make_shared<baselines::PcaModel>(baselines::pca_fit(train_data, options.pca));
      for (int i = 1; i <= model->k; ++i) reducer.score_names.push_back("pca_" + std::to_string(i));
      reducer.apply = [model, names](const MatrixXd& X) {
        return baselines::pca_transform(*model, DataMatrix{X, names});
      };
      break;
    }
    case Method::ica: {
      // The PCA component rule fixes k; ICA has no variance ordering of its own.
      const baselines::PcaModel spectrum = baselines::pca_fit(train_data, options.pca);
      auto model = std::make_shared<baselines::IcaModel>(
          baselines::ica_fit(train_data, spectrum.k, seed));
      for (int i = 1; i <= model->k; ++i) reducer.score_names.push_back("ica_" + std::to_string(i));
      reducer.apply = [model, names](const MatrixXd& X) {
        return baselines::ica_transform(*model, DataMatrix{X, names});
      };
      break;
    }
    case Method::ega: {
      ega::EgaOptions opts;
      opts.algorithm = options.algorithm;
      opts.gamma = options.gamma;
      opts.seed = seed;
      const ega::EgaResult result = ega::ega(train_data, opts);
      const int f_count = result.dimension_count;
      const Index p = train.cols();

      // Relative score weights per community, over standardized columns.
      const Scaler scaler = fit_scaler(train);
      const MatrixXd z_train = apply_scaler(train, scaler);
      const Scaler z_scaler = fit_scaler(z_train);
      MatrixXd weight = MatrixXd::Zero(p, f_count);
      for (int f = 0; f < f_count; ++f) {
        std::vector<Index> members;
        for (Index i = 0; i < p; ++i) {
          if (result.membership.assignment[i] == f + 1) members.push_back(i);
        }
        double v_sum = 0.0;
        VectorXd v(static_cast<Index>(members.size()));
        for (std::size_t m = 0; m < members.size(); ++m) {
          v(static_cast<Index>(m)) =
              result.loadings.standardized(members[m], f) / z_scaler.sd(members[m]);
          v_sum += v(static_cast<Index>(m));
        }
        if (v_sum <= 0.0) {
          if (members.size() != 1) {
            throw NumericError("community " + std::to_string(f + 1) + " has zero total loading");
          }
          weight(members[0], f) = 1.0;
        } else {
          for (std::size_t m = 0; m < members.size(); ++m) {
            weight(members[m], f) = v(static_cast<Index>(m)) / v_sum;
          }
        }
      }
      for (int f = 1; f <= f_count; ++f) reducer.score_names.push_back("ega_dim_" + std::to_string(f));
      auto apply_scaler_copy = scaler;
      auto weight_copy = weight;
      reducer.apply = [apply_scaler_copy, weight_copy](const MatrixXd& X) {
        return MatrixXd(apply_scaler(X, apply_scaler_copy) * weight_copy);
      };
      break;
    }
    case Method::uva: {
      uva::UvaOptions opts;
      opts.threshold = options.threshold;
      opts.combine = options.combine;
      opts.glasso.gamma = options.gamma;
      auto result = std::make_shared<uva::UvaResult>(uva::uva(train_data, opts));
      reducer.score_names = result->reduced.column_names;
      reducer.apply = [result](const MatrixXd& X) { return result->transform(X); };
      break;
    }
  }
  return reducer;
}

struct EncodedTarget {
  VectorXd reals;                    // regression
  std::vector<int> labels;           // classification
  std::vector<std::string> classes;  // label names in first-appearance order
};

EncodedTarget encode_target(const std::vector<std::string>& target, Task task) {
  EncodedTarget out;
  if (task == Task::regression) {
    out.reals.resize(static_cast<Index>(target.size()));
    for (std::size_t i = 0; i < target.size(); ++i) {
      double v;
      const char* first = target[i].data();
      const char* last = first + target[i].size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc{} || ptr != last) {
        throw ParseError("regression target contains non-numeric value: " + target[i]);
      }
      out.reals(static_cast<Index>(i)) = v;
    }
  } else {
    out.labels.resize(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
      auto it = std::find(out.classes.begin(), out.classes.end(), target[i]);
      if (it == out.classes.end()) {
        out.classes.push_back(target[i]);
        out.labels[i] = static_cast<int>(out.classes.size()) - 1;
      } else {
        out.labels[i] = static_cast<int>(it - out.classes.begin());
      }
    }
    if (out.classes.size() < 2) throw InvalidArgument("classification target has a single class");
  }
  return out;
}

// Standardizes on the training rows, fits the learner, returns the metric on
// the evaluation rows. Optionally exports the fitted model for audit.
double fit_and_eval(const MatrixXd& f_train, const MatrixXd& f_eval, const EncodedTarget& y,
                    const std::vector<int>& train_rows, const std::vector<int>& eval_rows,
                    Task task, double penalty, std::string* model_json = nullptr) {
  const Scaler s = tolerant_scaler(f_train);
  const MatrixXd a = apply_scaler(f_train, s);
  const MatrixXd b = apply_scaler(f_eval, s);
  if (task == Task::regression) {
    VectorXd y_train(static_cast<Index>(train_rows.size()));
    for (std::size_t i = 0; i < train_rows.size(); ++i) y_train(static_cast<Index>(i)) = y.reals(train_rows[i]);
    const learners::LassoModel model = learners::lasso_fit(a, y_train, penalty);
    if (model_json != nullptr) *model_json = learners::model_to_json(model);
    const VectorXd pred = learners::lasso_predict(model, b);
    std::vector<double> truth(eval_rows.size()), est(eval_rows.size());
    for (std::size_t i = 0; i < eval_rows.size(); ++i) {
      truth[i] = y.reals(eval_rows[i]);
      est[i] = pred(static_cast<Index>(i));
    }
    return rmse(truth, est);
  }
  std::vector<int> y_train(train_rows.size()), y_eval(eval_rows.size());
  for (std::size_t i = 0; i < train_rows.size(); ++i) y_train[i] = y.labels[train_rows[i]];
  for (std::size_t i = 0; i < eval_rows.size(); ++i) y_eval[i] = y.labels[eval_rows[i]];
  const learners::LogisticModel model =
      learners::logistic_fit(a, y_train, static_cast<int>(y.classes.size()), penalty);
  if (model_json != nullptr) *model_json = learners::model_to_json(model, y.classes);
  return accuracy(y_eval, learners::logistic_predict(model, b));
}

void validate_config(const PipelineConfig& config) {
  if (config.folds < 2) throw InvalidArgument("folds must be at least 2");
  const bool compatible =
      (config.task == Task::regression && config.learner == Learner::lasso) ||
      (config.task == Task::classification && config.learner == Learner::logit);
  if (!compatible) {
    throw InvalidArgument("learner " + to_string(config.learner) + " is incompatible with task " +
                          to_string(config.task));
  }
}

json summary_to_json(const Summary& s) {
  return json{{"dataset", s.dataset},     {"method", s.method},
              {"learner", s.learner},     {"metric", s.metric},
              {"mean", s.mean},           {"std_error", s.std_error},
              {"folds", s.folds},         {"holdout", s.holdout},
              {"best_penalty", s.best_penalty}};
}

void append_number(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  out.append(buf, ptr);
}

}  // namespace

std::vector<std::vector<int>> kfold_split(int n, int k, std::uint64_t seed,
                                          const std::vector<int>* strata) {
  if (k < 1) throw InvalidArgument("fold count must be positive");
  if (k > n) throw InvalidArgument("fold count exceeds observation count");
  Rng rng(seed);
  std::vector<std::vector<int>> folds(k);

  if (strata != nullptr) {
    if (static_cast<int>(strata->size()) != n) {
      throw InvalidArgument("strata size does not match n");
    }
    // Group by label in first-appearance order, shuffle within groups, then
    // deal cyclically so fold sizes and class balance stay within one.
    std::vector<int> label_order;
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < n; ++i) {
      const int label = (*strata)[i];
      auto it = std::find(label_order.begin(), label_order.end(), label);
      if (it == label_order.end()) {
        label_order.push_back(label);
        groups.emplace_back();
        groups.back().push_back(i);
      } else {
        groups[static_cast<std::size_t>(it - label_order.begin())].push_back(i);
      }
    }
    int cursor = 0;
    for (auto& group : groups) {
      rng.shuffle(group);
      for (int idx : group) folds[cursor++ % k].push_back(idx);
    }
  } else {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    const int base = n / k;
    const int extra = n % k;
    int pos = 0;
    for (int f = 0; f < k; ++f) {
      const int size = base + (f < extra ? 1 : 0);
      folds[f].assign(order.begin() + pos, order.begin() + pos + size);
      pos += size;
    }
  }
  return folds;
}

double rmse(const std::vector<double>& y, const std::vector<double>& y_hat) {
  if (y.empty()) throw InvalidArgument("rmse of empty vectors");
  if (y.size() != y_hat.size()) throw InvalidArgument("rmse length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - y_hat[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(y.size()));
}

double accuracy(const std::vector<int>& y, const std::vector<int>& y_hat) {
  if (y.empty()) throw InvalidArgument("accuracy of empty vectors");
  if (y.size() != y_hat.size()) throw InvalidArgument("accuracy length mismatch");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == y_hat[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(y.size());
}

std::string to_string(Task t) { return t == Task::regression ? "regression" : "classification"; }
std::string to_string(Method m) {
  switch (m) {
    case Method::none: return "none";
    case Method::pca: return "pca";
    case Method::ica: return "ica";
    case Method::ega: return "ega";
    case Method::uva: return "uva";
  }
  return "none";
}
std::string to_string(Learner l) { return l == Learner::lasso ? "lasso" : "logit"; }
std::string to_string(Mode m) {
  return m == Mode::paper_faithful ? "paper_faithful" : "leakage_safe";
}

Task task_from_string(const std::string& s) {
  if (s == "regression") return Task::regression;
  if (s == "classification") return Task::classification;
  throw InvalidArgument("unknown task: " + s);
}
Method method_from_string(const std::string& s) {
  if (s == "none") return Method::none;
  if (s == "pca") return Method::pca;
  if (s == "ica") return Method::ica;
  if (s == "ega") return Method::ega;
  if (s == "uva") return Method::uva;
  throw InvalidArgument("unknown method: " + s);
}
Learner learner_from_string(const std::string& s) {
  if (s == "lasso") return Learner::lasso;
  if (s == "logit") return Learner::logit;
  throw InvalidArgument("unknown learner: " + s);
}
Mode mode_from_string(const std::string& s) {
  if (s == "paper_faithful") return Mode::paper_faithful;
  if (s == "leakage_safe") return Mode::leakage_safe;
  throw InvalidArgument("unknown mode: " + s);
}

BenchReport run_pipeline(const PipelineConfig& config) {
  validate_config(config);

  const LoadResult loaded = load_csv(config.dataset_path, config.target_column);
  if (config.target_column.empty()) throw InvalidArgument("benchmark requires a target column");
  const EncodedTarget y = encode_target(loaded.target, config.task);
  const MatrixXd& X = loaded.data.values;
  const int n = static_cast<int>(X.rows());

  const std::string dataset =
      config.dataset_name.empty() ? dataset_stem(config.dataset_path) : config.dataset_name;
  const std::string method_name = to_string(config.method);
  const std::string learner_name = to_string(config.learner);
  const std::string metric_name = config.task == Task::regression ? "rmse" : "acc";

  const Rng root(config.seed);
  const std::vector<int>* strata = config.task == Task::classification ? &y.labels : nullptr;

  auto with_context = [&](const std::string& stage, const std::exception& e) {
    return Error(dataset + "/" + method_name + "/" + learner_name + " " + stage + ": " + e.what());
  };

  // Full-data reduction for paper_faithful mode.
  FittedReducer full_reducer;
  MatrixXd full_scores;
  if (config.mode == Mode::paper_faithful) {
    try {
      full_reducer = fit_reducer(config.method, X, loaded.data.column_names, config.options,
                                 root.child("reduce").seed());
      full_scores = full_reducer.apply(X);
    } catch (const Error& e) {
      throw with_context("reduction failed", e);
    }
  }

  // Tuning stage: stratified 75/25 split, 3-fold grid search on the 75%.
  const auto quarter_folds = kfold_split(n, 4, root.child("tuning").seed(), strata);
  const std::vector<int>& holdout_rows = quarter_folds[0];
  std::vector<int> tuning_rows;
  for (int f = 1; f < 4; ++f) {
    tuning_rows.insert(tuning_rows.end(), quarter_folds[f].begin(), quarter_folds[f].end());
  }

  MatrixXd f_tune, f_holdout;
  if (config.mode == Mode::paper_faithful) {
    f_tune = select_rows(full_scores, tuning_rows);
    f_holdout = select_rows(full_scores, holdout_rows);
  } else {
    try {
      const FittedReducer reducer =
          fit_reducer(config.method, select_rows(X, tuning_rows), loaded.data.column_names,
                      config.options, root.child("reduce_tuning").seed());
      f_tune = reducer.apply(select_rows(X, tuning_rows));
      f_holdout = reducer.apply(select_rows(X, holdout_rows));
    } catch (const Error& e) {
      throw with_context("tuning reduction failed", e);
    }
  }

  const Scaler tune_scaler = tolerant_scaler(f_tune);
  const MatrixXd a_tune = apply_scaler(f_tune, tune_scaler);
  VectorXd y_tune_real;
  std::vector<int> y_tune_labels;
  if (config.task == Task::regression) {
    y_tune_real.resize(static_cast<Index>(tuning_rows.size()));
    for (std::size_t i = 0; i < tuning_rows.size(); ++i) {
      y_tune_real(static_cast<Index>(i)) = y.reals(tuning_rows[i]);
    }
  } else {
    y_tune_labels.resize(tuning_rows.size());
    for (std::size_t i = 0; i < tuning_rows.size(); ++i) y_tune_labels[i] = y.labels[tuning_rows[i]];
  }

  const learners::LearnerKind kind = config.task == Task::regression
                                         ? learners::LearnerKind::lasso
                                         : learners::LearnerKind::logistic;
  const std::vector<double> grid = learners::default_grid(kind, a_tune, y_tune_real);
  const learners::GridSearchResult gs =
      learners::grid_search(a_tune, y_tune_real, y_tune_labels,
                            static_cast<int>(y.classes.size()), kind, grid, 3,
                            root.child("grid").seed());

  std::string tuned_model_json;
  const double holdout_metric = fit_and_eval(f_tune, f_holdout, y, tuning_rows, holdout_rows,
                                             config.task, gs.best_penalty, &tuned_model_json);

  // Final k-fold cross-validation with the selected penalty.
  const auto folds = kfold_split(n, config.folds, root.child("kfold").seed(), strata);
  BenchReport report;
  std::vector<double> fold_values;
  for (int f = 0; f < config.folds; ++f) {
    const std::vector<int>& test_rows = folds[f];
    std::vector<int> train_rows;
    for (int g = 0; g < config.folds; ++g) {
      if (g != f) train_rows.insert(train_rows.end(), folds[g].begin(), folds[g].end());
    }
    // Leakage guard: the partition property is structural, but assert it.
    for (int t : test_rows) {
      if (std::find(train_rows.begin(), train_rows.end(), t) != train_rows.end()) {
        throw Error("internal: train/test overlap in fold " + std::to_string(f));
      }
    }

    MatrixXd f_train, f_test;
    if (config.mode == Mode::paper_faithful) {
      f_train = select_rows(full_scores, train_rows);
      f_test = select_rows(full_scores, test_rows);
    } else {
      try {
        const FittedReducer reducer =
            fit_reducer(config.method, select_rows(X, train_rows), loaded.data.column_names,
                        config.options, root.child("reduce_fold_" + std::to_string(f)).seed());
        f_train = reducer.apply(select_rows(X, train_rows));
        f_test = reducer.apply(select_rows(X, test_rows));
      } catch (const Error& e) {
        throw with_context("fold " + std::to_string(f) + " reduction failed", e);
      }
    }

    const double value =
        fit_and_eval(f_train, f_test, y, train_rows, test_rows, config.task, gs.best_penalty);
    fold_values.push_back(value);
    report.records.push_back({dataset, method_name, learner_name, f, metric_name, value});
  }

  Summary summary;
  summary.dataset = dataset;
  summary.method = method_name;
  summary.learner = learner_name;
  summary.metric = metric_name;
  summary.folds = config.folds;
  summary.holdout = holdout_metric;
  summary.best_penalty = gs.best_penalty;
  summary.model_json = tuned_model_json;
  double sum = 0.0;
  for (double v : fold_values) sum += v;
  summary.mean = sum / static_cast<double>(fold_values.size());
  double sq = 0.0;
  for (double v : fold_values) sq += (v - summary.mean) * (v - summary.mean);
  const double sd = std::sqrt(sq / static_cast<double>(fold_values.size() - 1));
  summary.std_error = sd / std::sqrt(static_cast<double>(fold_values.size()));
  report.summaries.push_back(summary);
  return report;
}

BenchReport compare(const std::vector<PipelineConfig>& configs, int jobs) {
  if (configs.empty()) throw InvalidArgument("compare needs at least one pipeline");
  for (const auto& c : configs) {
    if (c.dataset_path != configs.front().dataset_path || c.task != configs.front().task) {
      throw InvalidArgument("compare pipelines must share dataset and task");
    }
  }

  const int worker_count =
      std::max(1, std::min<int>(jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency()),
                                static_cast<int>(configs.size())));

  std::vector<BenchReport> results(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());

  if (worker_count == 1) {
    for (std::size_t i = 0; i < configs.size(); ++i) results[i] = run_pipeline(configs[i]);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= configs.size()) break;
        try {
          results[i] = run_pipeline(configs[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < worker_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Deterministic assembly in config order, independent of thread timing.
  BenchReport report;
  for (const auto& r : results) {
    report.records.insert(report.records.end(), r.records.begin(), r.records.end());
    report.summaries.insert(report.summaries.end(), r.summaries.begin(), r.summaries.end());
  }
  const bool maximize = configs.front().task == Task::classification;
  double best = maximize ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < report.summaries.size(); ++i) {
    const double mean = report.summaries[i].mean;
    if ((maximize && mean > best) || (!maximize && mean < best)) {
      best = mean;
      report.best_index = static_cast<int>(i);
    }
  }
  return report;
}

PipelineConfig config_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid config JSON: ") + e.what());
  }
  try {
    PipelineConfig config;
    config.dataset_path = j.at("dataset").get<std::string>();
    config.target_column = j.value("target", "");
    config.dataset_name = j.value("name", "");
    if (j.contains("task")) config.task = task_from_string(j["task"].get<std::string>());
    if (j.contains("method")) config.method = method_from_string(j["method"].get<std::string>());
    if (j.contains("learner")) {
      config.learner = learner_from_string(j["learner"].get<std::string>());
    } else {
      config.learner = config.task == Task::regression ? Learner::lasso : Learner::logit;
    }
    config.folds = j.value("folds", 5);
    if (j.contains("mode")) config.mode = mode_from_string(j["mode"].get<std::string>());
    config.seed = j.value("seed", 42ull);
    config.options.gamma = j.value("gamma", 0.5);
    config.options.threshold = j.value("threshold", 0.25);
    if (j.contains("algorithm")) {
      const std::string a = j["algorithm"].get<std::string>();
      if (a == "walktrap") config.options.algorithm = ega::Algorithm::walktrap;
      else if (a == "louvain") config.options.algorithm = ega::Algorithm::louvain;
      else throw InvalidArgument("unknown algorithm: " + a);
    }
    if (j.contains("combine")) {
      const std::string c = j["combine"].get<std::string>();
      if (c == "sum") config.options.combine = uva::Combine::sum;
      else if (c == "mean") config.options.combine = uva::Combine::mean;
      else throw InvalidArgument("unknown combine: " + c);
    }
    if (j.contains("k") && !j["k"].is_null()) config.options.pca.k = j["k"].get<int>();
    config.options.pca.variance_threshold = j.value("variance_threshold", 0.8);
    if (j.contains("k_rule")) {
      const std::string r = j["k_rule"].get<std::string>();
      if (r == "cumulative_variance") config.options.pca.rule = baselines::KRule::cumulative_variance;
      else if (r == "acceleration") config.options.pca.rule = baselines::KRule::acceleration;
      else throw InvalidArgument("unknown k_rule: " + r);
    }
    return config;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid config JSON: ") + e.what());
  }
}

std::string config_to_json(const PipelineConfig& config) {
  json j{{"dataset", config.dataset_path},
         {"target", config.target_column},
         {"task", to_string(config.task)},
         {"method", to_string(config.method)},
         {"learner", to_string(config.learner)},
         {"folds", config.folds},
         {"mode", to_string(config.mode)},
         {"seed", config.seed},
         {"gamma", config.options.gamma},
         {"threshold", config.options.threshold},
         {"algorithm", config.options.algorithm == ega::Algorithm::walktrap ? "walktrap" : "louvain"},
         {"combine", config.options.combine == uva::Combine::sum ? "sum" : "mean"},
         {"variance_threshold", config.options.pca.variance_threshold}};
  if (!config.dataset_name.empty()) j["name"] = config.dataset_name;
  if (config.options.pca.k.has_value()) j["k"] = *config.options.pca.k;
  return j.dump(2);
}

CompareSpec compare_spec_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid compare JSON: ") + e.what());
  }
  CompareSpec spec;
  spec.jobs = j.value("jobs", 0);
  if (j.contains("pipelines")) {
    for (const auto& item : j["pipelines"]) {
      spec.pipelines.push_back(config_from_json(item.dump()));
    }
  } else if (j.contains("methods")) {
    json base = j;
    base.erase("methods");
    base.erase("jobs");
    for (const auto& m : j["methods"]) {
      base["method"] = m.get<std::string>();
      spec.pipelines.push_back(config_from_json(base.dump()));
    }
  } else {
    spec.pipelines.push_back(config_from_json(json_text));
  }
  return spec;
}

std::string report_to_json(const BenchReport& report) {
  json records = json::array();
  for (const auto& r : report.records) {
    records.push_back(json{{"dataset", r.dataset},
                           {"method", r.method},
                           {"learner", r.learner},
                           {"fold", r.fold},
                           {"metric", r.metric},
                           {"value", r.value}});
  }
  json summaries = json::array();
  for (const auto& s : report.summaries) {
    json item = summary_to_json(s);
    if (!s.model_json.empty()) item["model"] = json::parse(s.model_json);
    summaries.push_back(item);
  }
  json j{{"records", records}, {"summaries", summaries}};
  if (report.best_index >= 0) {
    j["best"] = json{{"method", report.summaries[report.best_index].method},
                     {"learner", report.summaries[report.best_index].learner},
                     {"mean", report.summaries[report.best_index].mean}};
  }
  return j.dump(2);
}

std::string report_summary_csv(const BenchReport& report) {
  std::string out = "dataset,method,learner,metric,mean,std_error,folds,holdout,best_penalty\n";
  for (const auto& s : report.summaries) {
    out += s.dataset + ',' + s.method + ',' + s.learner + ',' + s.metric + ',';
    append_number(out, s.mean);
    out += ',';
    append_number(out, s.std_error);
    out += ',' + std::to_string(s.folds) + ',';
    append_number(out, s.holdout);
    out += ',';
    append_number(out, s.best_penalty);
    out += '\n';
  }
  return out;
}

}  // namespace ndr::bench
