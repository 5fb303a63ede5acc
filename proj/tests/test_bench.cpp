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

#include <doctest.h>

#include <cmath>
#include <set>

#include "core/bench.hpp"
#include "testutil.hpp"

using namespace ndr;
using namespace ndr::bench;
using namespace ndrtest;

namespace {

// Two-block correlated features, binary target driven by the first block.
std::string classification_csv(Rng& rng, int n) {
  const MatrixXd sigma = block_correlation({3, 3}, 0.65, 0.1);
  const MatrixXd x = sample_mvn(rng, sigma, n);
  std::string csv = "f1,f2,f3,f4,f5,f6,label\n";
  for (Index i = 0; i < n; ++i) {
    const double score = x(i, 0) + x(i, 1) + x(i, 2) + 0.4 * rng.normal();
    for (Index j = 0; j < 6; ++j) csv += std::to_string(x(i, j)) + ",";
    csv += score > 0 ? "yes\n" : "no\n";
  }
  return csv;
}

std::string regression_csv(Rng& rng, int n) {
  const MatrixXd x = random_normal(rng, n, 4);
  std::string csv = "a,b,c,d,y\n";
  for (Index i = 0; i < n; ++i) {
    const double y = 2.0 * x(i, 0) - 1.0 * x(i, 1) + 0.3 * rng.normal();
    for (Index j = 0; j < 4; ++j) csv += std::to_string(x(i, j)) + ",";
    csv += std::to_string(y) + "\n";
  }
  return csv;
}

PipelineConfig base_classification(const std::string& path) {
  PipelineConfig config;
  config.dataset_path = path;
  config.target_column = "label";
  config.task = Task::classification;
  config.learner = Learner::logit;
  config.method = Method::none;
  config.mode = Mode::paper_faithful;
  config.folds = 5;
  config.seed = 42;
  return config;
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("kfold partitions evenly") {
  const auto folds = kfold_split(10, 5, 1);
  std::set<int> all;
  for (const auto& fold : folds) {
    CHECK(fold.size() == 2);
    all.insert(fold.begin(), fold.end());
  }
  CHECK(all.size() == 10);
}

TEST_CASE("kfold stratification balances classes") {
  std::vector<int> labels(20);
  for (int i = 0; i < 20; ++i) labels[i] = i % 2;
  const auto folds = kfold_split(20, 5, 7, &labels);
  for (const auto& fold : folds) {
    CHECK(fold.size() == 4);
    int zeros = 0;
    for (int idx : fold) zeros += labels[idx] == 0 ? 1 : 0;
    CHECK(zeros == 2);
  }
}

TEST_CASE("kfold sizes differ by at most one") {
  const auto folds = kfold_split(23, 5, 3);
  std::size_t smallest = 100, largest = 0;
  for (const auto& fold : folds) {
    smallest = std::min(smallest, fold.size());
    largest = std::max(largest, fold.size());
  }
  CHECK(largest - smallest <= 1);
}

TEST_CASE("kfold is deterministic in the seed") {
  const auto a = kfold_split(50, 5, 99);
  const auto b = kfold_split(50, 5, 99);
  CHECK(a == b);
  const auto c = kfold_split(50, 5, 100);
  CHECK(a != c);
}

TEST_CASE("kfold rejects more folds than rows") {
  CHECK_THROWS_AS(kfold_split(3, 5, 1), InvalidArgument);
}

TEST_CASE("metric hand values") {
  CHECK(rmse({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(rmse({0, 0}, {3, 4}) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-12));
  CHECK(rmse({0, 0}, {3, 4}) == doctest::Approx(3.5355).epsilon(1e-4));
  CHECK(accuracy({1, 2, 3, 4}, {1, 2, 3, 0}) == 0.75);
  CHECK_THROWS_AS(rmse({}, {}), InvalidArgument);
  CHECK_THROWS_AS(accuracy({1}, {1, 2}), InvalidArgument);
}

TEST_CASE("run_pipeline with no reduction emits one record per fold") {
  Rng rng(401);
  const std::string path = write_temp_file("bench_cls.csv", classification_csv(rng, 120));
  const BenchReport report = run_pipeline(base_classification(path));
  CHECK(report.records.size() == 5);
  for (int f = 0; f < 5; ++f) {
    CHECK(report.records[f].fold == f);
    CHECK(report.records[f].metric == "acc");
    CHECK(report.records[f].method == "none");
  }
  REQUIRE(report.summaries.size() == 1);
  CHECK(report.summaries[0].folds == 5);
  CHECK(report.summaries[0].mean > 0.7);  // strong signal, should classify well
}

TEST_CASE("summaries are recomputable from the records") {
  Rng rng(403);
  const std::string path = write_temp_file("bench_reg.csv", regression_csv(rng, 90));
  PipelineConfig config;
  config.dataset_path = path;
  config.target_column = "y";
  config.task = Task::regression;
  config.learner = Learner::lasso;
  config.method = Method::pca;
  config.mode = Mode::paper_faithful;
  const BenchReport report = run_pipeline(config);

  double sum = 0.0;
  for (const auto& r : report.records) sum += r.value;
  const double mean = sum / static_cast<double>(report.records.size());
  CHECK(report.summaries[0].mean == mean);
  double sq = 0.0;
  for (const auto& r : report.records) sq += (r.value - mean) * (r.value - mean);
  const double se = std::sqrt(sq / (report.records.size() - 1.0)) /
                    std::sqrt(static_cast<double>(report.records.size()));
  CHECK(report.summaries[0].std_error == se);
}

TEST_CASE("pipelines are bit-reproducible") {
  Rng rng(405);
  const std::string path = write_temp_file("bench_rep.csv", classification_csv(rng, 100));
  PipelineConfig config = base_classification(path);
  config.method = Method::pca;
  const BenchReport a = run_pipeline(config);
  const BenchReport b = run_pipeline(config);
  CHECK(report_to_json(a) == report_to_json(b));
}

TEST_CASE("leakage_safe refits the reduction per fold and still works") {
  Rng rng(407);
  const std::string path = write_temp_file("bench_leak.csv", classification_csv(rng, 100));
  PipelineConfig config = base_classification(path);
  config.method = Method::pca;
  config.mode = Mode::leakage_safe;
  const BenchReport report = run_pipeline(config);
  CHECK(report.records.size() == 5);
  CHECK(report.summaries[0].mean > 0.6);
}

TEST_CASE("run_pipeline validates learner and task compatibility") {
  Rng rng(409);
  const std::string path = write_temp_file("bench_bad.csv", classification_csv(rng, 60));
  PipelineConfig config = base_classification(path);
  config.learner = Learner::lasso;  // lasso regression on a classification task
  CHECK_THROWS_AS(run_pipeline(config), InvalidArgument);

  PipelineConfig no_target = base_classification(path);
  no_target.target_column = "";
  CHECK_THROWS_AS(run_pipeline(no_target), InvalidArgument);
}

TEST_CASE("compare of one config reproduces run_pipeline") {
  Rng rng(411);
  const std::string path = write_temp_file("bench_cmp1.csv", classification_csv(rng, 90));
  PipelineConfig config = base_classification(path);
  const BenchReport single = run_pipeline(config);
  const BenchReport cmp = compare({config}, 1);
  CHECK(cmp.summaries.size() == 1);
  CHECK(cmp.summaries[0].mean == single.summaries[0].mean);
  CHECK(cmp.best_index == 0);
}

TEST_CASE("compare runs a five-method sweep") {
  Rng rng(413);
  const std::string path = write_temp_file("bench_sweep.csv", classification_csv(rng, 130));
  std::vector<PipelineConfig> configs;
  for (Method m : {Method::none, Method::pca, Method::ica, Method::ega, Method::uva}) {
    PipelineConfig config = base_classification(path);
    config.method = m;
    configs.push_back(config);
  }
  const BenchReport report = compare(configs, 1);
  CHECK(report.summaries.size() == 5);
  CHECK(report.records.size() == 25);
  CHECK(report.best_index >= 0);
  std::set<std::string> methods;
  for (const auto& s : report.summaries) methods.insert(s.method);
  CHECK(methods == std::set<std::string>{"none", "pca", "ica", "ega", "uva"});
}

TEST_CASE("compare output is identical across job counts") {
  Rng rng(415);
  const std::string path = write_temp_file("bench_jobs.csv", classification_csv(rng, 110));
  std::vector<PipelineConfig> configs;
  for (Method m : {Method::none, Method::pca, Method::ica, Method::uva}) {
    PipelineConfig config = base_classification(path);
    config.method = m;
    configs.push_back(config);
  }
  const BenchReport serial = compare(configs, 1);
  const BenchReport parallel = compare(configs, 4);
  CHECK(report_to_json(serial) == report_to_json(parallel));
}

TEST_CASE("compare rejects mixed datasets or tasks") {
  Rng rng(417);
  const std::string path_a = write_temp_file("bench_mixa.csv", classification_csv(rng, 60));
  const std::string path_b = write_temp_file("bench_mixb.csv", classification_csv(rng, 60));
  PipelineConfig a = base_classification(path_a);
  PipelineConfig b = base_classification(path_b);
  CHECK_THROWS_AS(compare({a, b}, 1), InvalidArgument);
}

TEST_CASE("two seeds give distinct records but close summaries") {
  Rng rng(419);
  const std::string path = write_temp_file("bench_seeds.csv", classification_csv(rng, 150));
  PipelineConfig a = base_classification(path);
  PipelineConfig b = base_classification(path);
  b.seed = 43;
  const BenchReport ra = run_pipeline(a);
  const BenchReport rb = run_pipeline(b);
  bool identical = true;
  for (std::size_t i = 0; i < ra.records.size(); ++i) {
    if (ra.records[i].value != rb.records[i].value) identical = false;
  }
  CHECK_FALSE(identical);
  CHECK(std::abs(ra.summaries[0].mean - rb.summaries[0].mean) < 0.2);
}

TEST_CASE("config json parsing and defaults") {
  const PipelineConfig config = config_from_json(R"({
    "dataset": "data/wine.csv",
    "target": "class",
    "task": "classification",
    "method": "pca",
    "mode": "paper_faithful"
  })");
  CHECK(config.dataset_path == "data/wine.csv");
  CHECK(config.learner == Learner::logit);  // defaulted from the task
  CHECK(config.folds == 5);
  CHECK(config.seed == 42);
  CHECK(config.options.gamma == 0.5);
  CHECK(config.options.threshold == 0.25);

  CHECK_THROWS_AS(config_from_json("{not json"), ParseError);
  CHECK_THROWS_AS(config_from_json("{}"), ParseError);  // dataset required
  CHECK_THROWS_AS(config_from_json(R"({"dataset":"x","task":"sorting"})"), InvalidArgument);
}

TEST_CASE("config json round trip") {
  PipelineConfig config;
  config.dataset_path = "data/wine.csv";
  config.target_column = "class";
  config.task = Task::classification;
  config.method = Method::ega;
  config.mode = Mode::paper_faithful;
  config.seed = 7;
  config.options.gamma = 0.4;
  const PipelineConfig parsed = config_from_json(config_to_json(config));
  CHECK(parsed.dataset_path == config.dataset_path);
  CHECK(parsed.method == config.method);
  CHECK(parsed.mode == config.mode);
  CHECK(parsed.seed == config.seed);
  CHECK(parsed.options.gamma == config.options.gamma);
}

TEST_CASE("compare spec expands a methods array") {
  const CompareSpec spec = compare_spec_from_json(R"({
    "dataset": "data/wine.csv",
    "target": "class",
    "task": "classification",
    "methods": ["none", "pca", "ega"],
    "jobs": 2
  })");
  CHECK(spec.pipelines.size() == 3);
  CHECK(spec.jobs == 2);
  CHECK(spec.pipelines[0].method == Method::none);
  CHECK(spec.pipelines[2].method == Method::ega);
}

TEST_CASE("report serialization carries records, summaries, and best") {
  Rng rng(421);
  const std::string path = write_temp_file("bench_json.csv", classification_csv(rng, 80));
  PipelineConfig config = base_classification(path);
  const BenchReport report = compare({config}, 1);
  const std::string json_text = report_to_json(report);
  CHECK(json_text.find("\"records\"") != std::string::npos);
  CHECK(json_text.find("\"summaries\"") != std::string::npos);
  CHECK(json_text.find("\"best\"") != std::string::npos);

  const std::string csv = report_summary_csv(report);
  CHECK(csv.find("dataset,method,learner,metric,mean,std_error,folds,holdout,best_penalty") == 0);
}

}  // TEST_SUITE
