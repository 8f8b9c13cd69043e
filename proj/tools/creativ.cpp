// Copyright 2026 The creativ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// creativ: command-line driver.
//
//   creativ validate --corpus DIR
//   creativ record   --corpus DIR --store FILE --endpoint URL --model NAME
//   creativ run      --config FILE [overrides]
//   creativ report   --run-dir DIR
//   creativ compare  REPORT.json... --out DIR
//
// Exit status: 0 success, 1 evaluation fault, 2 configuration fault.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "creativ/corpus.hpp"
#include "creativ/error.hpp"
#include "creativ/llm_gateway.hpp"
#include "creativ/pipeline.hpp"
#include "creativ/report.hpp"
#include "creativ/sim_harness.hpp"

namespace fs = std::filesystem;
using namespace creativ;
using nlohmann::json;

namespace {

volatile std::sig_atomic_t g_interrupted = 0;

void on_signal(int) { g_interrupted = 1; }

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFile:
    case ErrorCode::DuplicateId:
    case ErrorCode::MalformedManifest:
    case ErrorCode::SubsetParseError:
    case ErrorCode::InvalidPattern:
    case ErrorCode::InvalidConfig:
    case ErrorCode::BadWeights:
    case ErrorCode::UnwritableOutput:
    case ErrorCode::CorpusInvalid:
    case ErrorCode::DuplicateModelId:
      return 2;
    default:
      return 1;
  }
}

// Flags shared by run/validate/record; applied on top of the config file.
struct Overrides {
  std::string config;
  std::string corpus;
  std::string model_id;
  std::string out;
  std::string store;
  std::string endpoint;
  std::string model;
  std::string mode;
  int jobs = 1;
  std::vector<std::string> experiments;
  bool resume = false;
  std::string sim_compile;
  std::string sim_run;
  double sim_timeout = 30;
  int sim_jobs = 1;
  bool keep_failures = true;
  std::string workdir;
  std::string similarity;
  std::string adapter_cmd;
  int wl_iterations = 3;
  std::string label_scheme;
  double threshold = 0;
  double eps = 1e-6;
  int t = 10;
  double temperature = 0.3;
  int max_tokens = 1024;
  int top_k = 10;
  double top_p = 0.95;

  std::map<std::string, CLI::Option*> opts;

  void add(CLI::App* app, bool with_run_flags) {
    opts["config"] = app->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
    opts["corpus"] = app->add_option("--corpus", corpus, "Corpus directory (manifest.json)");
    opts["sim-compile"] = app->add_option("--sim-compile", sim_compile, "Simulator compile command template");
    opts["sim-run"] = app->add_option("--sim-run", sim_run, "Simulator run command template");
    opts["sim-timeout"] = app->add_option("--sim-timeout", sim_timeout, "Per-simulation timeout, seconds");
    opts["sim-jobs"] = app->add_option("--sim-jobs", sim_jobs, "Concurrent simulations");
    opts["keep-failures"] = app->add_option("--keep-failures", keep_failures, "Keep work directories of failed checks");
    opts["workdir"] = app->add_option("--workdir", workdir, "Simulation work directory root");
    if (!with_run_flags) return;
    opts["model-id"] = app->add_option("--model-id", model_id, "Name of the evaluated model in reports");
    opts["out"] = app->add_option("--out", out, "Output directory");
    opts["store"] = app->add_option("--replay-store,--store", store, "Replay store (JSON lines)");
    opts["endpoint"] = app->add_option("--endpoint", endpoint, "OpenAI-compatible base URL");
    opts["model"] = app->add_option("--model", model, "Model name sent to the endpoint");
    opts["mode"] = app->add_option("--mode", mode, "chat or completion")->check(CLI::IsMember({"chat", "completion"}));
    opts["jobs"] = app->add_option("--parallelism,--jobs", jobs, "Concurrent generation requests");
    opts["experiments"] = app->add_option("--experiments", experiments, "completion, rewrite, elaboration")
                              ->delimiter(',');
    opts["resume"] = app->add_flag("--resume", resume, "Continue an interrupted run");
    opts["similarity"] = app->add_option("--similarity", similarity, "builtin or adapter")
                             ->check(CLI::IsMember({"builtin", "adapter"}));
    opts["adapter-cmd"] = app->add_option("--adapter-cmd", adapter_cmd, "External similarity adapter command");
    opts["wl-iterations"] = app->add_option("--wl-iterations", wl_iterations, "WL refinement rounds");
    opts["label-scheme"] = app->add_option("--label-scheme", label_scheme, "full or op_only")
                               ->check(CLI::IsMember({"full", "op_only"}));
    opts["threshold"] = app->add_option("--threshold", threshold, "Flexibility threshold");
    opts["eps"] = app->add_option("--eps", eps, "Score uniqueness tolerance");
    opts["t"] = app->add_option("-t,--samples", t, "Samples per prompt");
    opts["temperature"] = app->add_option("--temperature", temperature);
    opts["max-tokens"] = app->add_option("--max-tokens", max_tokens);
    opts["top-k"] = app->add_option("--top-k", top_k);
    opts["top-p"] = app->add_option("--top-p", top_p);
  }

  bool given(const std::string& name) const {
    auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }

  pipeline::RunConfig build() const {
    pipeline::RunConfig cfg = config.empty() ? pipeline::RunConfig{} : pipeline::load_run_config(config);
    if (given("corpus")) cfg.corpus_path = corpus;
    if (given("model-id")) cfg.model_id = model_id;
    if (given("out")) cfg.output_dir = out;
    if (given("store")) {
      cfg.replay_store = store;
      cfg.backend = pipeline::GenerationBackend::Replay;
    }
    if (given("endpoint")) {
      cfg.http.endpoint_url = endpoint;
      cfg.backend = pipeline::GenerationBackend::Http;
    }
    if (given("model")) cfg.http.model = model;
    if (given("mode")) cfg.http.mode = mode == "chat" ? llm::ApiMode::Chat : llm::ApiMode::Completion;
    if (given("jobs")) cfg.generation_jobs = jobs;
    if (given("experiments")) {
      cfg.experiments.clear();
      for (const auto& name : experiments) {
        auto e = parse_experiment(name);
        if (!e) throw Error(ErrorCode::InvalidConfig, "unknown experiment '" + name + "'");
        cfg.experiments.insert(*e);
      }
    }
    if (given("resume")) cfg.resume = resume;
    if (given("sim-compile")) cfg.sim.compile_cmd = sim_compile;
    if (given("sim-run")) cfg.sim.run_cmd = sim_run;
    if (given("sim-timeout")) cfg.sim.timeout_seconds = sim_timeout;
    if (given("sim-jobs")) cfg.sim.jobs = sim_jobs;
    if (given("keep-failures")) cfg.sim.keep_failures = keep_failures;
    if (given("workdir")) cfg.sim.workdir_root = workdir;
    if (given("similarity")) {
      cfg.similarity = similarity == "builtin" ? pipeline::SimilarityKind::Builtin : pipeline::SimilarityKind::Adapter;
    }
    if (given("adapter-cmd")) cfg.adapter_cmd = adapter_cmd;
    if (given("wl-iterations")) cfg.kernel.wl_iterations = wl_iterations;
    if (given("label-scheme")) {
      cfg.kernel.label_scheme = label_scheme == "full" ? similarity::LabelScheme::Full : similarity::LabelScheme::OpOnly;
    }
    if (given("threshold")) cfg.threshold = threshold;
    if (given("eps")) cfg.eps = eps;
    if (given("t")) cfg.sampling.t = t;
    if (given("temperature")) cfg.sampling.temperature = temperature;
    if (given("max-tokens")) cfg.sampling.max_tokens = max_tokens;
    if (given("top-k")) cfg.sampling.top_k = top_k;
    if (given("top-p")) cfg.sampling.top_p = top_p;
    return cfg;
  }
};

void log_line(const std::string& msg) { std::cerr << "creativ: " << msg << "\n"; }

int cmd_validate(const Overrides& o) {
  pipeline::RunConfig cfg = o.build();
  if (cfg.corpus_path.empty()) throw Error(ErrorCode::InvalidConfig, "--corpus is required");
  cfg.sim.validate();
  corpus::Corpus corpus = corpus::load_corpus(cfg.corpus_path);
  sim::ValidationReport report = sim::validate_corpus(corpus, cfg.sim);
  std::cout << "checked " << report.checked << " cases (" << corpus.p_single << " single, " << corpus.p_multi
            << " multi)\n";
  for (const auto& f : report.failures) {
    std::cout << "FAIL " << f.case_id << " " << sim::to_string(f.verdict) << "\n" << f.log << "\n";
  }
  if (!report.ok()) {
    std::cout << report.failures.size() << " golden solution(s) failed\n";
    return 2;
  }
  std::cout << "all golden solutions pass\n";
  return 0;
}

int cmd_record(const Overrides& o) {
  pipeline::RunConfig cfg = o.build();
  if (cfg.corpus_path.empty()) throw Error(ErrorCode::InvalidConfig, "--corpus is required");
  if (cfg.replay_store.empty()) throw Error(ErrorCode::InvalidConfig, "--store is required");
  if (cfg.http.model.empty()) throw Error(ErrorCode::InvalidConfig, "--model is required");
  cfg.sampling.validate();
  corpus::Corpus corpus = corpus::load_corpus(cfg.corpus_path);
  std::vector<llm::GenerationRequest> requests;
  for (Experiment e : cfg.experiments) {
    for (const auto& c : corpus.cases) {
      if (corpus::experiment_applies(e, c.kind)) {
        requests.push_back({c.id, e, corpus::build_prompt(e, c, cfg.templates)});
      }
    }
  }
  llm::HttpBackend backend(cfg.http, log_line);
  std::size_t n = llm::record_session(requests, cfg.sampling, backend, cfg.replay_store, cfg.generation_jobs);
  std::cout << "recorded " << n << " new samples into " << cfg.replay_store.string() << "\n";
  return 0;
}

int cmd_run(const Overrides& o) {
  pipeline::RunConfig cfg = o.build();
  cfg.validate();
  // The saved config is read back relative to the run directory.
  for (fs::path* p : {&cfg.corpus_path, &cfg.replay_store, &cfg.output_dir, &cfg.sim.workdir_root}) {
    if (!p->empty()) *p = fs::absolute(*p);
  }
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  {
    std::ofstream out(cfg.output_dir / "config.json", std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::UnwritableOutput, "cannot write " + (cfg.output_dir / "config.json").string());
    json saved = pipeline::run_config_to_json(cfg);
    saved.erase("resume");
    out << saved.dump(2) << "\n";
  }
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  pipeline::RunHooks hooks;
  hooks.log = log_line;
  hooks.after_event = [](pipeline::Stage, std::size_t) {
    if (g_interrupted) throw Error(ErrorCode::Interrupted, "interrupted; rerun with --resume to continue");
  };
  metrics::MetricReport report = pipeline::run_evaluation(cfg, hooks);
  std::cout << pipeline::render_report(report, pipeline::ReportFormat::Markdown);
  return 0;
}

int cmd_report(const std::string& run_dir) {
  fs::path dir = run_dir;
  pipeline::RunConfig cfg = pipeline::load_run_config(dir / "config.json");
  cfg.output_dir = dir;
  corpus::Corpus corpus = corpus::load_corpus(cfg.corpus_path);
  metrics::MetricReport report = pipeline::derive_report(pipeline::RunStore::load(cfg.run_log_path()), corpus, cfg);
  pipeline::write_reports(report, dir);
  std::cout << pipeline::render_report(report, pipeline::ReportFormat::Markdown);
  return 0;
}

int cmd_compare(const std::vector<std::string>& inputs, const std::string& out) {
  std::vector<metrics::MetricReport> reports;
  for (const auto& path : inputs) {
    fs::path p = path;
    if (fs::is_directory(p)) p /= "report.json";
    reports.push_back(pipeline::read_report_json(p));
  }
  pipeline::Comparison cmp = pipeline::compare_models(reports);
  pipeline::write_comparison(cmp, out);
  std::cout << cmp.markdown;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Creativity evaluation of LLM-generated Verilog"};
  app.require_subcommand(1);

  Overrides validate_opts, record_opts, run_opts;
  auto* validate = app.add_subcommand("validate", "Check every golden solution against its testbench");
  validate_opts.add(validate, false);
  auto* record = app.add_subcommand("record", "Record live responses into a replay store");
  record_opts.add(record, true);
  auto* run = app.add_subcommand("run", "Run the evaluation and write reports");
  run_opts.add(run, true);

  std::string run_dir;
  auto* report = app.add_subcommand("report", "Rebuild reports from a run directory");
  report->add_option("--run-dir", run_dir, "Directory holding run.jsonl and config.json")->required();

  std::vector<std::string> inputs;
  std::string compare_out = ".";
  auto* compare = app.add_subcommand("compare", "Rank several models by creativity");
  compare->add_option("reports", inputs, "report.json files or run directories")->required();
  compare->add_option("--out", compare_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(validate_opts);
    if (*record) return cmd_record(record_opts);
    if (*run) return cmd_run(run_opts);
    if (*report) return cmd_report(run_dir);
    if (*compare) return cmd_compare(inputs, compare_out);
  } catch (const Error& e) {
    std::cerr << "creativ: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "creativ: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
