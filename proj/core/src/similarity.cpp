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
#include "creativ/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "creativ/error.hpp"
#include "creativ/hdl/parser.hpp"
#include "creativ/process.hpp"

namespace creativ::similarity {
using nlohmann::json;

namespace {

// Compressed labels are only comparable within one dictionary, so both
// graphs of a comparison share one.
class LabelDictionary {
 public:
  int intern(const std::string& label) {
    auto [it, inserted] = ids_.try_emplace(label, static_cast<int>(ids_.size()));
    return it->second;
  }

 private:
  std::unordered_map<std::string, int> ids_;
};

std::string base_label(const std::string& label, LabelScheme scheme) {
  if (scheme == LabelScheme::OpOnly && (label.starts_with("input:") || label.starts_with("output:"))) {
    return label.substr(0, label.find(':'));
  }
  return label;
}

using FeatureCounts = std::unordered_map<int, std::int64_t>;

FeatureCounts wl_features(const hdl::Dfg& g, const KernelConfig& cfg, LabelDictionary& dict) {
  const std::size_t n = g.nodes.size();
  std::vector<std::vector<int>> preds(n);
  for (const auto& [src, dst] : g.edges) preds[dst].push_back(src);

  FeatureCounts counts;
  std::vector<int> labels(n);
  for (std::size_t v = 0; v < n; ++v) {
    labels[v] = dict.intern("0|" + base_label(g.nodes[v].label, cfg.label_scheme));
    ++counts[labels[v]];
  }
  std::vector<int> next(n);
  std::vector<int> neigh;
  for (int it = 1; it <= cfg.wl_iterations; ++it) {
    for (std::size_t v = 0; v < n; ++v) {
      neigh.clear();
      for (int p : preds[v]) neigh.push_back(labels[p]);
      std::sort(neigh.begin(), neigh.end());
      std::string sig = std::to_string(it) + "|" + std::to_string(labels[v]) + "|";
      for (int l : neigh) sig += std::to_string(l) + ",";
      next[v] = dict.intern(sig);
      ++counts[next[v]];
    }
    labels.swap(next);
  }
  return counts;
}

std::int64_t dot(const FeatureCounts& a, const FeatureCounts& b) {
  const FeatureCounts& small = a.size() <= b.size() ? a : b;
  const FeatureCounts& large = a.size() <= b.size() ? b : a;
  std::int64_t sum = 0;
  for (const auto& [k, v] : small) {
    if (auto it = large.find(k); it != large.end()) sum += v * it->second;
  }
  return sum;
}

std::string unscorable_reason(const Error& e) {
  std::string reason(to_string(e.code()));
  if (auto* se = dynamic_cast<const hdl::SyntaxError*>(&e); se && !se->construct().empty()) {
    reason += ": " + se->construct();
  }
  return reason;
}

const hdl::ModuleAst* pick_module(const std::vector<hdl::ModuleAst>& modules, const std::string& name) {
  for (const auto& m : modules) {
    if (m.name == name) return &m;
  }
  return modules.empty() ? nullptr : &modules.front();
}

}  // namespace

double wl_similarity(const hdl::Dfg& a, const hdl::Dfg& b, const KernelConfig& cfg) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyGraph, "cannot compare an empty graph");
  if (cfg.wl_iterations < 1) throw Error(ErrorCode::InvalidConfig, "wl_iterations must be >= 1");
  LabelDictionary dict;
  FeatureCounts fa = wl_features(a, cfg, dict);
  FeatureCounts fb = wl_features(b, cfg, dict);
  std::int64_t ab = dot(fa, fb);
  std::int64_t aa = dot(fa, fa);
  std::int64_t bb = dot(fb, fb);
  double c = ab == aa && aa == bb ? 1.0
                                  : static_cast<double>(ab) /
                                        std::sqrt(static_cast<double>(aa) * static_cast<double>(bb));
  c = std::clamp(c, 0.0, 1.0);
  return 2.0 * c - 1.0;
}

WlKernelBackend::WlKernelBackend(KernelConfig cfg) : cfg_(cfg) {}

std::string WlKernelBackend::id() const {
  return "wl-kernel:h" + std::to_string(cfg_.wl_iterations) +
         (cfg_.label_scheme == LabelScheme::OpOnly ? ":op_only" : ":full");
}

std::vector<double> WlKernelBackend::score(std::span<const ScoringPair> pairs) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(wl_similarity(p.candidate_graph, p.golden_graph, cfg_));
  return out;
}

AdapterBackend::AdapterBackend(std::string adapter_cmd, double timeout_seconds)
    : cmd_(std::move(adapter_cmd)), timeout_(timeout_seconds) {}

std::string AdapterBackend::id() const { return "adapter:" + cmd_; }

std::vector<double> AdapterBackend::score(std::span<const ScoringPair> pairs) {
  if (pairs.empty()) return {};
  std::vector<AdapterPair> req;
  req.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    // Positional ids keep the response mapping unambiguous.
    req.push_back({std::to_string(i), pairs[i].candidate_text, pairs[i].golden_text});
  }
  auto scores = adapter_similarity(req, cmd_, timeout_);
  std::vector<double> out(pairs.size());
  for (const auto& [id, value] : scores) out[std::stoul(id)] = value;
  return out;
}

std::vector<std::pair<std::string, double>> adapter_similarity(std::span<const AdapterPair> pairs,
                                                               const std::string& adapter_cmd,
                                                               double timeout_seconds) {
  json request{{"pairs", json::array()}};
  for (const auto& p : pairs) {
    request["pairs"].push_back({{"id", p.id}, {"module_a", p.module_a}, {"module_b", p.module_b}});
  }
  auto argv = split_command(adapter_cmd);
  if (argv.empty()) throw Error(ErrorCode::AdapterCrash, "empty adapter command");
  ProcessOptions opts;
  opts.stdin_data = request.dump() + "\n";
  opts.timeout_seconds = timeout_seconds;
  ProcessResult r = run_process(argv, opts);
  if (r.launch_failed) {
    throw Error(ErrorCode::AdapterCrash, "cannot launch '" + argv[0] + "': " + std::strerror(r.launch_errno));
  }
  if (r.timed_out) throw Error(ErrorCode::AdapterCrash, "adapter timed out; stderr: " + r.err);
  if (r.exit_code != 0) {
    throw Error(ErrorCode::AdapterCrash,
                "adapter exited with status " + std::to_string(r.exit_code) + "; stderr: " + r.err);
  }

  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  json response;
  try {
    response = json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::AdapterProtocolError, std::string("response is not JSON: ") + e.what());
  }
  if (!response.is_object() || !response.contains("scores") || !response["scores"].is_array()) {
    throw Error(ErrorCode::AdapterProtocolError, "response lacks a \"scores\" array");
  }
  std::unordered_map<std::string, double> by_id;
  for (const auto& s : response["scores"]) {
    if (!s.is_object() || !s.contains("id") || !s["id"].is_string() || !s.contains("score") ||
        !s["score"].is_number()) {
      throw Error(ErrorCode::AdapterProtocolError, "malformed score entry: " + s.dump());
    }
    double v = s["score"].get<double>();
    if (!std::isfinite(v) || v < -1.0 || v > 1.0) {
      throw Error(ErrorCode::AdapterRangeError, "score " + s["score"].dump() + " for id '" +
                                                    s["id"].get<std::string>() + "' is outside [-1, 1]");
    }
    if (!by_id.emplace(s["id"].get<std::string>(), v).second) {
      throw Error(ErrorCode::AdapterProtocolError, "duplicate id '" + s["id"].get<std::string>() + "'");
    }
  }
  std::vector<std::pair<std::string, double>> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    auto it = by_id.find(p.id);
    if (it == by_id.end()) throw Error(ErrorCode::AdapterProtocolError, "no score for id '" + p.id + "'");
    out.emplace_back(p.id, it->second);
  }
  if (by_id.size() != pairs.size()) throw Error(ErrorCode::AdapterProtocolError, "unrequested ids in response");
  return out;
}

namespace {

std::vector<hdl::ModuleAst> submodule_library(const corpus::PromptCase& c) {
  std::vector<hdl::ModuleAst> library;
  for (const auto& src : c.submodules) {
    for (auto& m : hdl::parse_source(src)) library.push_back(std::move(m));
  }
  return library;
}

hdl::Dfg top_graph(const std::vector<hdl::ModuleAst>& modules, const hdl::ModuleAst& top,
                   std::vector<hdl::ModuleAst> library) {
  for (const auto& m : modules) {
    if (&m != &top) library.push_back(m);
  }
  return hdl::extract_dfg(top, library);
}

}  // namespace

std::variant<hdl::Dfg, Unscorable> candidate_graph(std::string_view candidate, const corpus::PromptCase& c) {
  std::vector<hdl::ModuleAst> modules;
  try {
    modules = hdl::parse_source(candidate);
  } catch (const Error& e) {
    return Unscorable{unscorable_reason(e)};
  }
  const hdl::ModuleAst* top = pick_module(modules, c.top_module_name());
  if (!top) return Unscorable{"EmptyGraph: no module in candidate"};
  hdl::Dfg g = top_graph(modules, *top, submodule_library(c));
  if (g.empty()) return Unscorable{"EmptyGraph"};
  return g;
}

std::variant<ScoringPair, Unscorable> prepare_pair(std::string_view candidate,
                                                   const corpus::PromptCase& c, std::string id) {
  auto cand = candidate_graph(candidate, c);
  if (auto* u = std::get_if<Unscorable>(&cand)) return *u;

  auto golden_modules = hdl::parse_source(c.golden_solution);
  const hdl::ModuleAst* golden = pick_module(golden_modules, c.top_module_name());
  if (!golden) throw Error(ErrorCode::CorpusInvalid, "case '" + c.id + "' golden has no module");

  ScoringPair pair;
  pair.id = std::move(id);
  pair.candidate_text = std::string(candidate);
  pair.golden_text = c.golden_solution;
  pair.candidate_graph = std::move(std::get<hdl::Dfg>(cand));
  pair.golden_graph = top_graph(golden_modules, *golden, submodule_library(c));
  if (pair.golden_graph.empty()) throw Error(ErrorCode::EmptyGraph, "case '" + c.id + "' golden graph is empty");
  return pair;
}

ScoreOutcome score_against_golden(std::string_view candidate, const corpus::PromptCase& c,
                                  SimilarityBackend& backend, const WorkUnit& unit) {
  ScoreRequest req{unit, std::string(candidate), &c};
  if (req.unit.case_id.empty()) req.unit.case_id = c.id;
  return score_batch(std::span(&req, 1), backend).front();
}

std::vector<ScoreOutcome> score_batch(std::span<const ScoreRequest> requests, SimilarityBackend& backend) {
  std::vector<ScoreOutcome> out(requests.size());
  std::vector<ScoringPair> pairs;
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const auto& r = requests[i];
    if (!r.case_ptr) throw std::invalid_argument("score_batch: request without a case");
    auto prepared = prepare_pair(r.candidate, *r.case_ptr, std::to_string(i));
    if (auto* u = std::get_if<Unscorable>(&prepared)) {
      out[i] = *u;
      continue;
    }
    pairs.push_back(std::move(std::get<ScoringPair>(prepared)));
    slots.push_back(i);
  }
  std::vector<double> values = backend.score(pairs);
  if (values.size() != pairs.size()) {
    throw Error(ErrorCode::AdapterProtocolError, "backend returned " + std::to_string(values.size()) +
                                                     " scores for " + std::to_string(pairs.size()) + " pairs");
  }
  const std::string backend_id = backend.id();
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const auto& r = requests[slots[k]];
    out[slots[k]] = SimilarityScore{values[k], backend_id, r.unit.case_id, r.unit.experiment, r.unit.sample_index};
  }
  return out;
}

}  // namespace creativ::similarity
