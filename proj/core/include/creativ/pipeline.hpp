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
// End-to-end evaluation run: validate corpus, generate, simulate, score,
// derive metrics from the run log, write reports.

#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <set>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "creativ/corpus.hpp"
#include "creativ/llm_gateway.hpp"
#include "creativ/metrics.hpp"
#include "creativ/run_store.hpp"
#include "creativ/sim_harness.hpp"
#include "creativ/similarity.hpp"

namespace creativ::pipeline {

enum class GenerationBackend { Replay, Http };
enum class SimilarityKind { Builtin, Adapter };

struct RunConfig {
  std::filesystem::path corpus_path;
  std::string model_id = "model";

  GenerationBackend backend = GenerationBackend::Replay;
  std::filesystem::path replay_store;
  llm::HttpConfig http;
  int generation_jobs = 1;
  llm::SamplingParams sampling;
  corpus::PromptTemplates templates;

  sim::SimConfig sim;

  SimilarityKind similarity = SimilarityKind::Builtin;
  similarity::KernelConfig kernel;
  std::string adapter_cmd;

  double threshold = 0.0;
  double eps = metrics::kDefaultEps;
  metrics::Weights weights;
  metrics::FluencyNormalization fluency_normalization = metrics::FluencyNormalization::BySamples;
  bool pairwise_fluency = false;
  metrics::ElaborationRule elaboration_rule = metrics::ElaborationRule::Any;

  std::filesystem::path output_dir = "out";
  std::set<Experiment> experiments{Experiment::Completion, Experiment::Rewrite, Experiment::Elaboration};
  bool resume = false;

  /// Throws InvalidConfig (or BadWeights, InvalidPattern) on bad settings.
  void validate() const;
  std::filesystem::path run_log_path() const { return output_dir / "run.jsonl"; }
};

/// Reads a JSON config object. Relative paths resolve against `base_dir`.
/// Unknown keys throw InvalidConfig.
RunConfig run_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json run_config_to_json(const RunConfig& cfg);

struct RunHooks {
  /// Called after each appended event; may throw to abort the run.
  std::function<void(Stage, std::size_t appended_in_stage)> after_event;
  /// Called when a stage has no work left; may throw to abort the run.
  std::function<void(Stage)> after_stage;
  std::function<void(const std::string&)> log;
  /// Overrides the configured generation backend.
  llm::Backend* backend = nullptr;
};

std::unique_ptr<llm::Backend> make_generation_backend(const RunConfig& cfg,
                                                      std::function<void(const std::string&)> log = {});
std::unique_ptr<similarity::SimilarityBackend> make_similarity_backend(const RunConfig& cfg);

/// Runs (or resumes) the evaluation and writes report.json, report.csv and
/// report.md next to run.jsonl. Throws CorpusInvalid when a golden
/// solution fails its testbench.
metrics::MetricReport run_evaluation(const RunConfig& cfg, const RunHooks& hooks = {});

/// Rebuilds the metric report from a run log alone.
metrics::MetricReport derive_report(const std::vector<nlohmann::json>& events, const corpus::Corpus& corpus,
                                    const RunConfig& cfg);

}  // namespace creativ::pipeline
