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
#include <algorithm>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "creativ/error.hpp"
#include "creativ/pattern.hpp"
#include "creativ/pipeline.hpp"

namespace creativ::pipeline {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

void allow_keys(const json& j, const std::string& section, std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) bad(section + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) bad("unknown key '" + k + "' in " + section);
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& section) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    bad(section + "." + key + " has the wrong type");
  }
}

void read_path(const json& j, const char* key, fs::path& out, const fs::path& base, const std::string& section) {
  std::string s;
  if (!j.contains(key)) return;
  read(j, key, s, section);
  out = fs::path(s);
  if (!s.empty() && out.is_relative() && !base.empty()) out = base / out;
}

}  // namespace

void RunConfig::validate() const {
  if (corpus_path.empty()) bad("corpus path is required");
  if (model_id.empty()) bad("model_id must not be empty");
  if (experiments.empty()) bad("at least one experiment is required");
  if (backend == GenerationBackend::Replay && replay_store.empty()) bad("replay backend needs a store path");
  if (backend == GenerationBackend::Http && http.model.empty()) bad("http backend needs a model name");
  if (generation_jobs < 1) bad("generation jobs must be >= 1");
  if (similarity == SimilarityKind::Adapter && adapter_cmd.empty()) bad("adapter similarity needs adapter_cmd");
  if (kernel.wl_iterations < 1) bad("wl_iterations must be >= 1");
  if (!(threshold >= -1.0 && threshold <= 1.0)) bad("threshold must be in [-1, 1]");
  if (!(eps >= 0.0)) bad("eps must be >= 0");
  if (output_dir.empty()) bad("output directory is required");
  sampling.validate();
  sim.validate();
  weights.validate();
}

RunConfig run_config_from_json(const json& j, const fs::path& base) {
  allow_keys(j, "config",
             {"corpus", "model_id", "output_dir", "experiments", "resume", "backend", "sampling", "prompts", "sim",
              "similarity", "metrics"});
  RunConfig cfg;
  read_path(j, "corpus", cfg.corpus_path, base, "config");
  read(j, "model_id", cfg.model_id, "config");
  read_path(j, "output_dir", cfg.output_dir, base, "config");
  read(j, "resume", cfg.resume, "config");
  if (j.contains("experiments")) {
    std::vector<std::string> names;
    read(j, "experiments", names, "config");
    cfg.experiments.clear();
    for (const auto& n : names) {
      auto e = parse_experiment(n);
      if (!e) bad("unknown experiment '" + n + "'");
      cfg.experiments.insert(*e);
    }
  }
  if (j.contains("backend")) {
    const json& b = j["backend"];
    allow_keys(b, "backend",
               {"kind", "store", "endpoint", "model", "mode", "api_key_env", "max_retries", "backoff", "timeout",
                "jobs"});
    std::string kind = "replay";
    read(b, "kind", kind, "backend");
    if (kind == "replay") cfg.backend = GenerationBackend::Replay;
    else if (kind == "http") cfg.backend = GenerationBackend::Http;
    else bad("backend.kind must be \"replay\" or \"http\"");
    read_path(b, "store", cfg.replay_store, base, "backend");
    read(b, "endpoint", cfg.http.endpoint_url, "backend");
    read(b, "model", cfg.http.model, "backend");
    if (b.contains("mode")) {
      std::string mode;
      read(b, "mode", mode, "backend");
      if (mode == "chat") cfg.http.mode = llm::ApiMode::Chat;
      else if (mode == "completion") cfg.http.mode = llm::ApiMode::Completion;
      else bad("backend.mode must be \"chat\" or \"completion\"");
    }
    read(b, "api_key_env", cfg.http.api_key_env, "backend");
    read(b, "max_retries", cfg.http.max_retries, "backend");
    read(b, "backoff", cfg.http.initial_backoff_seconds, "backend");
    read(b, "timeout", cfg.http.request_timeout_seconds, "backend");
    read(b, "jobs", cfg.generation_jobs, "backend");
  }
  if (j.contains("sampling")) {
    const json& s = j["sampling"];
    allow_keys(s, "sampling", {"temperature", "max_tokens", "top_k", "top_p", "t"});
    read(s, "temperature", cfg.sampling.temperature, "sampling");
    read(s, "max_tokens", cfg.sampling.max_tokens, "sampling");
    read(s, "top_k", cfg.sampling.top_k, "sampling");
    read(s, "top_p", cfg.sampling.top_p, "sampling");
    read(s, "t", cfg.sampling.t, "sampling");
  }
  if (j.contains("prompts")) {
    const json& p = j["prompts"];
    allow_keys(p, "prompts", {"rewrite_instruction", "elaboration_instruction"});
    read(p, "rewrite_instruction", cfg.templates.rewrite_instruction, "prompts");
    read(p, "elaboration_instruction", cfg.templates.elaboration_instruction, "prompts");
  }
  if (j.contains("sim")) {
    const json& s = j["sim"];
    allow_keys(s, "sim",
               {"compile_cmd", "run_cmd", "timeout", "compile_timeout", "workdir_root", "keep_failures", "jobs",
                "failure_pattern", "pass_pattern"});
    read(s, "compile_cmd", cfg.sim.compile_cmd, "sim");
    read(s, "run_cmd", cfg.sim.run_cmd, "sim");
    read(s, "timeout", cfg.sim.timeout_seconds, "sim");
    if (s.contains("compile_timeout")) {
      double v = 0;
      read(s, "compile_timeout", v, "sim");
      cfg.sim.compile_timeout_seconds = v;
    }
    read_path(s, "workdir_root", cfg.sim.workdir_root, base, "sim");
    read(s, "keep_failures", cfg.sim.keep_failures, "sim");
    read(s, "jobs", cfg.sim.jobs, "sim");
    read(s, "failure_pattern", cfg.sim.default_pass_rule.failure_pattern, "sim");
    if (s.contains("pass_pattern") && !s["pass_pattern"].is_null()) {
      std::string p;
      read(s, "pass_pattern", p, "sim");
      cfg.sim.default_pass_rule.pass_pattern = p;
    }
  }
  if (j.contains("similarity")) {
    const json& s = j["similarity"];
    allow_keys(s, "similarity", {"backend", "wl_iterations", "label_scheme", "adapter_cmd"});
    std::string kind = "builtin";
    read(s, "backend", kind, "similarity");
    if (kind == "builtin") cfg.similarity = SimilarityKind::Builtin;
    else if (kind == "adapter") cfg.similarity = SimilarityKind::Adapter;
    else bad("similarity.backend must be \"builtin\" or \"adapter\"");
    read(s, "wl_iterations", cfg.kernel.wl_iterations, "similarity");
    if (s.contains("label_scheme")) {
      std::string scheme;
      read(s, "label_scheme", scheme, "similarity");
      if (scheme == "full") cfg.kernel.label_scheme = similarity::LabelScheme::Full;
      else if (scheme == "op_only") cfg.kernel.label_scheme = similarity::LabelScheme::OpOnly;
      else bad("similarity.label_scheme must be \"full\" or \"op_only\"");
    }
    read(s, "adapter_cmd", cfg.adapter_cmd, "similarity");
  }
  if (j.contains("metrics")) {
    const json& m = j["metrics"];
    allow_keys(m, "metrics",
               {"threshold", "eps", "weights", "fluency_normalization", "pairwise_fluency", "elaboration_rule"});
    read(m, "threshold", cfg.threshold, "metrics");
    read(m, "eps", cfg.eps, "metrics");
    if (m.contains("weights")) {
      allow_keys(m["weights"], "metrics.weights", {"fluency", "flexibility", "originality", "elaboration"});
      cfg.weights = m["weights"].get<metrics::Weights>();
    }
    if (m.contains("fluency_normalization")) {
      std::string n;
      read(m, "fluency_normalization", n, "metrics");
      if (n == "samples") cfg.fluency_normalization = metrics::FluencyNormalization::BySamples;
      else if (n == "functional") cfg.fluency_normalization = metrics::FluencyNormalization::ByFunctional;
      else bad("metrics.fluency_normalization must be \"samples\" or \"functional\"");
    }
    read(m, "pairwise_fluency", cfg.pairwise_fluency, "metrics");
    if (m.contains("elaboration_rule")) {
      std::string r;
      read(m, "elaboration_rule", r, "metrics");
      if (r == "any") cfg.elaboration_rule = metrics::ElaborationRule::Any;
      else if (r == "all") cfg.elaboration_rule = metrics::ElaborationRule::All;
      else bad("metrics.elaboration_rule must be \"any\" or \"all\"");
    }
  }
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
  return run_config_from_json(j, path.parent_path());
}

json run_config_to_json(const RunConfig& cfg) {
  json experiments = json::array();
  for (Experiment e : cfg.experiments) experiments.push_back(to_string(e));
  json j{{"corpus", cfg.corpus_path.string()},
         {"model_id", cfg.model_id},
         {"output_dir", cfg.output_dir.string()},
         {"experiments", experiments},
         {"resume", cfg.resume},
         {"sampling", cfg.sampling},
         {"prompts",
          {{"rewrite_instruction", cfg.templates.rewrite_instruction},
           {"elaboration_instruction", cfg.templates.elaboration_instruction}}}};
  if (cfg.backend == GenerationBackend::Replay) {
    j["backend"] = {{"kind", "replay"}, {"store", cfg.replay_store.string()}, {"jobs", cfg.generation_jobs}};
  } else {
    j["backend"] = {{"kind", "http"},
                    {"endpoint", cfg.http.endpoint_url},
                    {"model", cfg.http.model},
                    {"mode", cfg.http.mode == llm::ApiMode::Chat ? "chat" : "completion"},
                    {"api_key_env", cfg.http.api_key_env},
                    {"max_retries", cfg.http.max_retries},
                    {"backoff", cfg.http.initial_backoff_seconds},
                    {"timeout", cfg.http.request_timeout_seconds},
                    {"jobs", cfg.generation_jobs}};
  }
  j["sim"] = {{"compile_cmd", cfg.sim.compile_cmd},
              {"run_cmd", cfg.sim.run_cmd},
              {"timeout", cfg.sim.timeout_seconds},
              {"workdir_root", cfg.sim.workdir_root.string()},
              {"keep_failures", cfg.sim.keep_failures},
              {"jobs", cfg.sim.jobs},
              {"failure_pattern", cfg.sim.default_pass_rule.failure_pattern}};
  if (cfg.sim.compile_timeout_seconds) j["sim"]["compile_timeout"] = *cfg.sim.compile_timeout_seconds;
  if (cfg.sim.default_pass_rule.pass_pattern) j["sim"]["pass_pattern"] = *cfg.sim.default_pass_rule.pass_pattern;
  j["similarity"] = {{"backend", cfg.similarity == SimilarityKind::Builtin ? "builtin" : "adapter"},
                     {"wl_iterations", cfg.kernel.wl_iterations},
                     {"label_scheme", cfg.kernel.label_scheme == similarity::LabelScheme::Full ? "full" : "op_only"},
                     {"adapter_cmd", cfg.adapter_cmd}};
  j["metrics"] = {
      {"threshold", cfg.threshold},
      {"eps", cfg.eps},
      {"weights", cfg.weights},
      {"fluency_normalization",
       cfg.fluency_normalization == metrics::FluencyNormalization::BySamples ? "samples" : "functional"},
      {"pairwise_fluency", cfg.pairwise_fluency},
      {"elaboration_rule", cfg.elaboration_rule == metrics::ElaborationRule::Any ? "any" : "all"}};
  return j;
}

}  // namespace creativ::pipeline
