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

// Similarity of a candidate module to its golden solution on the [-1, 1]
// scale, larger meaning more similar. Two backends: a deterministic
// Weisfeiler-Lehman subtree kernel over data-flow graphs, and an external
// adapter process speaking line-delimited JSON:
//
//   request  {"pairs": [{"id": "...", "module_a": "...", "module_b": "..."}]}
//   response {"scores": [{"id": "...", "score": 0.25}]}

#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "creativ/corpus.hpp"
#include "creativ/experiment.hpp"
#include "creativ/hdl/ast.hpp"
#include "creativ/hdl/dfg.hpp"

namespace creativ::similarity {

enum class LabelScheme {
  Full,    // labels as extracted, port widths included
  OpOnly,  // port widths dropped
};

struct KernelConfig {
  int wl_iterations = 3;
  LabelScheme label_scheme = LabelScheme::Full;
};

/// Cosine similarity c of the two graphs' WL subtree feature count vectors
/// (iterations 0..wl_iterations, in-neighbor refinement), returned as
/// 2c - 1. Exactly symmetric; exactly 1 for identical graphs. Throws
/// EmptyGraph when either graph has no nodes.
double wl_similarity(const hdl::Dfg& a, const hdl::Dfg& b, const KernelConfig& cfg = {});

struct SimilarityScore {
  double value = 0.0;
  std::string backend_id;
  std::string case_id;
  Experiment experiment = Experiment::Completion;
  int sample_index = 0;
};

/// A functional response the similarity stage cannot score, with the
/// reason (e.g. "UnsupportedConstruct: generate").
struct Unscorable {
  std::string reason;
};

using ScoreOutcome = std::variant<SimilarityScore, Unscorable>;

/// A parsed candidate/golden pair ready for a backend.
struct ScoringPair {
  std::string id;
  std::string candidate_text;
  std::string golden_text;
  hdl::Dfg candidate_graph;
  hdl::Dfg golden_graph;
};

class SimilarityBackend {
 public:
  virtual ~SimilarityBackend() = default;
  virtual std::string id() const = 0;
  /// One value in [-1, 1] per pair, in order.
  virtual std::vector<double> score(std::span<const ScoringPair> pairs) = 0;
};

class WlKernelBackend : public SimilarityBackend {
 public:
  explicit WlKernelBackend(KernelConfig cfg = {});
  std::string id() const override;
  std::vector<double> score(std::span<const ScoringPair> pairs) override;

 private:
  KernelConfig cfg_;
};

class AdapterBackend : public SimilarityBackend {
 public:
  explicit AdapterBackend(std::string adapter_cmd, double timeout_seconds = 600.0);
  std::string id() const override;
  std::vector<double> score(std::span<const ScoringPair> pairs) override;

 private:
  std::string cmd_;
  double timeout_;
};

struct AdapterPair {
  std::string id;
  std::string module_a;
  std::string module_b;
};

/// Runs the adapter once over all pairs. Throws AdapterCrash (launch
/// failure or nonzero exit, with stderr), AdapterProtocolError (malformed
/// or incomplete response) or AdapterRangeError (score outside [-1, 1]).
std::vector<std::pair<std::string, double>> adapter_similarity(
    std::span<const AdapterPair> pairs, const std::string& adapter_cmd,
    double timeout_seconds = 600.0);

/// Data-flow graph of a candidate's top module, with the case's
/// submodules as the instance library.
std::variant<hdl::Dfg, Unscorable> candidate_graph(std::string_view candidate, const corpus::PromptCase& c);

/// Parses the candidate and the case's golden top module and extracts both
/// graphs, or explains why the candidate cannot be scored.
std::variant<ScoringPair, Unscorable> prepare_pair(std::string_view candidate,
                                                   const corpus::PromptCase& c,
                                                   std::string id = {});

ScoreOutcome score_against_golden(std::string_view candidate, const corpus::PromptCase& c,
                                  SimilarityBackend& backend, const WorkUnit& unit = {});

struct ScoreRequest {
  WorkUnit unit;
  std::string candidate;
  const corpus::PromptCase* case_ptr = nullptr;
};

/// Scores many candidates with a single backend call.
std::vector<ScoreOutcome> score_batch(std::span<const ScoreRequest> requests,
                                      SimilarityBackend& backend);

}  // namespace creativ::similarity
