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

#include "core/baselines.hpp"
#include "core/ega.hpp"
#include "core/error.hpp"
#include "core/uva.hpp"

namespace ndr::bench {

// Seeded k-fold partition of 0..n-1 with fold sizes differing by at most
// one; stratified by label when strata is given (each class dealt cyclically
// so per-fold class counts are balanced).
std::vector<std::vector<int>> kfold_split(int n, int k, std::uint64_t seed,
                                          const std::vector<int>* strata = nullptr);

double rmse(const std::vector<double>& y, const std::vector<double>& y_hat);
double accuracy(const std::vector<int>& y, const std::vector<int>& y_hat);

enum class Task { regression, classification };
enum class Method { none, pca, ica, ega, uva };
enum class Learner { lasso, logit };

// paper_faithful fits the reduction once on the full feature matrix before
// cross-validation; leakage_safe refits it inside every training fold.
enum class Mode { paper_faithful, leakage_safe };

std::string to_string(Task t);
std::string to_string(Method m);
std::string to_string(Learner l);
std::string to_string(Mode m);
Task task_from_string(const std::string& s);
Method method_from_string(const std::string& s);
Learner learner_from_string(const std::string& s);
Mode mode_from_string(const std::string& s);

struct MethodOptions {
  double gamma = 0.5;                                      // ega
  ega::Algorithm algorithm = ega::Algorithm::walktrap;     // ega
  double threshold = 0.25;                                 // uva
  uva::Combine combine = uva::Combine::sum;                // uva
  baselines::PcaOptions pca;                               // pca / ica component rule
};

struct PipelineConfig {
  std::string dataset_path;
  std::string target_column;
  std::string dataset_name;  // derived from the path when empty
  Task task = Task::classification;
  Method method = Method::none;
  Learner learner = Learner::logit;
  int folds = 5;
  Mode mode = Mode::leakage_safe;
  std::uint64_t seed = 42;
  MethodOptions options;
};

struct FoldRecord {
  std::string dataset;
  std::string method;
  std::string learner;
  int fold = 0;
  std::string metric;  // "rmse" or "acc"
  double value = 0.0;
};

struct Summary {
  std::string dataset;
  std::string method;
  std::string learner;
  std::string metric;
  double mean = 0.0;
  double std_error = 0.0;  // sample sd of fold metrics / sqrt(k)
  int folds = 0;
  double holdout = 0.0;      // 25% split metric from the tuning stage
  double best_penalty = 0.0;
  std::string model_json;    // tuned model fitted on the 75% split, for audit
};

struct BenchReport {
  std::vector<FoldRecord> records;
  std::vector<Summary> summaries;
  int best_index = -1;  // index into summaries; set by compare
};

// Tunes the learner penalty on a seeded 75% split with 3-fold grid search,
// then runs the final k-fold cross-validation with the selected penalty and
// emits one record per fold.
BenchReport run_pipeline(const PipelineConfig& config);

// Runs several pipelines over the same dataset/task (optionally in
// parallel), concatenates their records, and flags the best pair. Output is
// identical for any job count.
BenchReport compare(const std::vector<PipelineConfig>& configs, int jobs = 1);

struct CompareSpec {
  std::vector<PipelineConfig> pipelines;
  int jobs = 0;  // 0: use hardware concurrency
};

PipelineConfig config_from_json(const std::string& json_text);
std::string config_to_json(const PipelineConfig& config);

// Accepts {"pipelines": [...]} or a single config carrying a "methods"
// array that is expanded into one pipeline per method.
CompareSpec compare_spec_from_json(const std::string& json_text);

std::string report_to_json(const BenchReport& report);
std::string report_summary_csv(const BenchReport& report);

}  // namespace ndr::bench
