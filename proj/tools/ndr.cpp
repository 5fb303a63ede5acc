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

// Command-line front end. All domain work goes through the shared-library C
// API in netdimred.h; this file only parses flags, assembles option JSON,
// and writes output files atomically.

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netdimred.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct CliError {
  int code;
  std::string message;
};

void append_number(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  out.append(buf, ptr);
}

// Temp file + rename, so a failed run never leaves a truncated output.
void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError{kExitRuntime, "cannot open for writing: " + tmp};
    out << contents;
    if (!out) throw CliError{kExitRuntime, "write failed: " + tmp};
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw CliError{kExitRuntime, "cannot rename " + tmp + " to " + path};
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitRuntime, "cannot open file: " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int runtime_exit_code(ndr_status status) {
  switch (status) {
    case NDR_ERROR_INVALID_ARGUMENT:
    case NDR_ERROR_PARSE:
      return kExitConfig;
    default:
      return kExitRuntime;
  }
}

void check(ndr_status status) {
  if (status != NDR_OK) {
    throw CliError{runtime_exit_code(status),
                   std::string(ndr_status_name(status)) + ": " + ndr_last_error()};
  }
}

std::string owned_string(char* text) {
  std::string out = text == nullptr ? "" : text;
  ndr_string_free(text);
  return out;
}

std::string default_side_path(const std::string& output, const std::string& suffix) {
  const std::size_t dot = output.find_last_of('.');
  const std::size_t slash = output.find_last_of("/\\");
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? output.substr(0, dot) : output) + suffix;
}

struct ReduceArgs {
  std::string method;
  std::string input;
  std::string output;
  std::string target;
  std::string json_out;
  std::uint64_t seed = 42;
  double gamma = 0.5;
  std::string algorithm = "walktrap";
  double threshold = 0.25;
  std::string combine = "sum";
  std::optional<int> k;
  std::string k_rule = "cumulative_variance";
  double variance_threshold = 0.8;
};

void run_reduce(const ReduceArgs& args) {
  ndr_dataset* dataset_raw = nullptr;
  check(ndr_dataset_load_csv(args.input.c_str(), args.target.empty() ? nullptr : args.target.c_str(),
                             &dataset_raw));
  std::unique_ptr<ndr_dataset, decltype(&ndr_dataset_free)> dataset(dataset_raw, &ndr_dataset_free);

  json options{{"method", args.method},
               {"seed", args.seed},
               {"gamma", args.gamma},
               {"algorithm", args.algorithm},
               {"threshold", args.threshold},
               {"combine", args.combine},
               {"k_rule", args.k_rule},
               {"variance_threshold", args.variance_threshold}};
  if (args.k.has_value()) options["k"] = *args.k;

  ndr_reduction* reduction_raw = nullptr;
  check(ndr_reduce(dataset.get(), options.dump().c_str(), &reduction_raw));
  std::unique_ptr<ndr_reduction, decltype(&ndr_reduction_free)> reduction(reduction_raw,
                                                                          &ndr_reduction_free);

  const int rows = ndr_reduction_rows(reduction.get());
  const int cols = ndr_reduction_cols(reduction.get());
  std::vector<double> scores(static_cast<std::size_t>(rows) * cols);
  check(ndr_reduction_copy_scores(reduction.get(), scores.data(), scores.size()));

  std::string csv;
  for (int j = 0; j < cols; ++j) {
    if (j) csv += ',';
    csv += ndr_reduction_column_name(reduction.get(), j);
  }
  csv += '\n';
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (j) csv += ',';
      append_number(csv, scores[static_cast<std::size_t>(i) * cols + j]);
    }
    csv += '\n';
  }
  write_file_atomic(args.output, csv);

  // ega/uva always leave their side artifact: the bare variable->community
  // map, or the reduction map with its iteration count. An explicit --json
  // path gets the full model metadata instead.
  std::string json_path = args.json_out;
  bool bare_artifact = false;
  if (json_path.empty()) {
    if (args.method == "ega") {
      json_path = default_side_path(args.output, "_membership.json");
      bare_artifact = true;
    }
    if (args.method == "uva") {
      json_path = default_side_path(args.output, "_map.json");
      bare_artifact = true;
    }
  }
  if (!json_path.empty()) {
    char* meta = nullptr;
    check(ndr_reduction_metadata_json(reduction.get(), &meta));
    std::string payload = owned_string(meta);
    if (bare_artifact) {
      const json full = json::parse(payload);
      if (args.method == "ega") {
        payload = full.at("membership").dump(2);
      } else {
        payload = json{{"reduction_map", full.at("reduction_map")},
                       {"iterations", full.at("iterations")}}
                      .dump(2);
      }
    }
    write_file_atomic(json_path, payload + "\n");
  }
}

void add_reduce_options(CLI::App* cmd, ReduceArgs& args, bool with_method) {
  if (with_method) {
    cmd->add_option("--method", args.method, "Reduction method")
        ->required()
        ->check(CLI::IsMember({"none", "pca", "ica", "ega", "uva"}));
  }
  cmd->add_option("--input", args.input, "Input CSV")->required();
  cmd->add_option("--output", args.output, "Output scores CSV")->required();
  cmd->add_option("--target", args.target, "Target column excluded from the features");
  cmd->add_option("--json", args.json_out, "Side metadata JSON path");
  cmd->add_option("--seed", args.seed, "Random seed")->envname("NDR_SEED");
  cmd->add_option("--gamma", args.gamma, "EBIC gamma");
  cmd->add_option("--algorithm", args.algorithm, "Community algorithm for ega")
      ->check(CLI::IsMember({"walktrap", "louvain"}));
  cmd->add_option("--threshold", args.threshold, "wTO combination threshold for uva");
  cmd->add_option("--combine", args.combine, "uva combination rule")
      ->check(CLI::IsMember({"sum", "mean"}));
  cmd->add_option("--k", args.k, "Retained components for pca/ica");
  cmd->add_option("--k-rule", args.k_rule, "Component count rule")
      ->check(CLI::IsMember({"cumulative_variance", "acceleration"}));
  cmd->add_option("--variance-threshold", args.variance_threshold,
                  "Cumulative explained variance target");
}

struct BenchArgs {
  std::string config_path;
  std::string input;
  std::string target;
  std::string task;
  std::string method;
  std::string learner;
  std::string mode;
  std::optional<int> folds;
  std::optional<std::uint64_t> seed;
  std::optional<double> gamma;
  std::optional<double> threshold;
  std::string out;
  std::string format = "json";
  std::string methods;  // compare only
  int jobs = 0;
};

json bench_config_json(const BenchArgs& args, bool need_dataset) {
  json config = json::object();
  if (!args.config_path.empty()) {
    try {
      config = json::parse(read_file(args.config_path));
    } catch (const json::exception& e) {
      throw CliError{kExitConfig, "invalid config JSON: " + std::string(e.what())};
    }
  }
  if (!args.input.empty()) config["dataset"] = args.input;
  if (!args.target.empty()) config["target"] = args.target;
  if (!args.task.empty()) config["task"] = args.task;
  if (!args.method.empty()) config["method"] = args.method;
  if (!args.learner.empty()) config["learner"] = args.learner;
  if (!args.mode.empty()) config["mode"] = args.mode;
  if (args.folds.has_value()) config["folds"] = *args.folds;
  if (args.seed.has_value()) config["seed"] = *args.seed;
  if (args.gamma.has_value()) config["gamma"] = *args.gamma;
  if (args.threshold.has_value()) config["threshold"] = *args.threshold;
  if (need_dataset && !config.contains("dataset")) {
    throw CliError{kExitConfig, "no dataset given (use --input or a config file)"};
  }
  return config;
}

void emit_report(const std::string& report_json, const std::string& out_path,
                 const std::string& format) {
  std::string payload = report_json + "\n";
  if (format == "csv") {
    char* csv = nullptr;
    check(ndr_report_summary_csv(report_json.c_str(), &csv));
    payload = owned_string(csv);
  }
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    write_file_atomic(out_path, payload);
  }
}

void run_bench(const BenchArgs& args) {
  const json config = bench_config_json(args, true);
  char* report = nullptr;
  check(ndr_bench_run(config.dump().c_str(), &report));
  emit_report(owned_string(report), args.out, args.format);
}

void run_compare(const BenchArgs& args) {
  json config = bench_config_json(args, true);
  if (!args.methods.empty()) {
    json methods = json::array();
    std::stringstream ss(args.methods);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) methods.push_back(item);
    }
    config["methods"] = methods;
  } else if (!config.contains("methods") && !config.contains("pipelines")) {
    config["methods"] = json::array({"none", "pca", "ica", "ega", "uva"});
  }
  config["jobs"] = args.jobs;
  config.erase("method");
  char* report = nullptr;
  check(ndr_compare_run(config.dump().c_str(), &report));
  emit_report(owned_string(report), args.out, args.format);
}

void add_bench_options(CLI::App* cmd, BenchArgs& args, bool compare) {
  cmd->add_option("--config", args.config_path, "Pipeline config JSON file");
  cmd->add_option("--input", args.input, "Dataset CSV (overrides config)");
  cmd->add_option("--target", args.target, "Target column");
  cmd->add_option("--task", args.task, "Task type")
      ->check(CLI::IsMember({"regression", "classification"}));
  if (!compare) {
    cmd->add_option("--method", args.method, "Reduction method")
        ->check(CLI::IsMember({"none", "pca", "ica", "ega", "uva"}));
  }
  cmd->add_option("--learner", args.learner, "Learner")->check(CLI::IsMember({"lasso", "logit"}));
  cmd->add_option("--mode", args.mode, "Evaluation mode")
      ->check(CLI::IsMember({"paper_faithful", "leakage_safe"}));
  cmd->add_option("--folds", args.folds, "Cross-validation folds");
  cmd->add_option("--seed", args.seed, "Random seed")->envname("NDR_SEED");
  cmd->add_option("--gamma", args.gamma, "EBIC gamma");
  cmd->add_option("--threshold", args.threshold, "uva wTO threshold");
  cmd->add_option("--out", args.out, "Report output path (stdout when omitted)");
  cmd->add_option("--format", args.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  if (compare) {
    cmd->add_option("--methods", args.methods, "Comma-separated method sweep");
    cmd->add_option("--jobs", args.jobs, "Parallel pipelines (0: all cores)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netdimred: network-psychometric dimension reduction and benchmarks"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  ReduceArgs reduce_args, ega_args, uva_args;
  ega_args.method = "ega";
  uva_args.method = "uva";
  BenchArgs bench_args, compare_args;

  CLI::App* reduce = app.add_subcommand("reduce", "Reduce a dataset to score columns");
  add_reduce_options(reduce, reduce_args, true);
  CLI::App* ega = app.add_subcommand("ega", "Exploratory graph analysis reduction");
  add_reduce_options(ega, ega_args, false);
  CLI::App* uva = app.add_subcommand("uva", "Unique variable analysis reduction");
  add_reduce_options(uva, uva_args, false);
  CLI::App* bench = app.add_subcommand("bench", "Run one benchmark pipeline");
  add_bench_options(bench, bench_args, false);
  CLI::App* compare = app.add_subcommand("compare", "Run a reduction-method sweep");
  add_bench_options(compare, compare_args, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help() << std::endl;
    std::cerr << "ndr: " << e.what() << std::endl;
    return kExitConfig;
  }

  try {
    if (reduce->parsed()) run_reduce(reduce_args);
    if (ega->parsed()) run_reduce(ega_args);
    if (uva->parsed()) run_reduce(uva_args);
    if (bench->parsed()) run_bench(bench_args);
    if (compare->parsed()) run_compare(compare_args);
  } catch (const CliError& e) {
    std::cerr << "ndr: " << e.message << std::endl;
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "ndr: " << e.what() << std::endl;
    return kExitRuntime;
  }
  return kExitOk;
}
