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
// Creativity metrics over per-prompt outcomes: fluency, flexibility,
// originality, elaboration, their weighted combination, and pass@t
// functionality.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "creativ/corpus.hpp"
#include "creativ/experiment.hpp"

namespace creativ::metrics {

inline constexpr double kDefaultEps = 1e-6;

/// Results of one prompt in one experiment.
struct PromptOutcome {
  std::string case_id;
  Experiment experiment = Experiment::Completion;
  int t = 0;
  std::vector<int> functional_indices;  // sorted; size m
  std::vector<double> scores;           // functional, scorable responses
  int unscorable_count = 0;
  std::optional<bool> elaborated;       // elaboration experiment only
  /// Pairwise similarity among the scored responses (row-major, |scores|
  /// squared). Only filled for the pairwise fluency variant.
  std::vector<std::vector<double>> pairwise;

  int m() const { return static_cast<int>(functional_indices.size()); }
  std::optional<double> min_score() const;
  bool operator==(const PromptOutcome&) const = default;
};

/// Number of clusters after sorting and splitting at gaps larger than eps.
int unique_count(std::span<const double> scores, double eps = kDefaultEps);

/// Number of groups of responses linked by pairwise similarity within eps
/// of 1 (transitively).
int unique_count_pairwise(const std::vector<std::vector<double>>& similarity, double eps = kDefaultEps);

/// A metric value and the number of prompts that contributed to it.
struct MetricValue {
  double value = 0.0;
  int n = 0;
  bool degenerate() const { return n == 0; }
};

enum class FluencyNormalization { BySamples, ByFunctional };

struct FluencyOptions {
  double eps = kDefaultEps;
  FluencyNormalization normalization = FluencyNormalization::BySamples;
  bool pairwise = false;
};

/// Mean over prompts with m >= 1 of unique scores / t (or / m).
MetricValue compute_fluency(std::span<const PromptOutcome> outcomes, int t, const FluencyOptions& opts = {});

/// Mean over prompts with a scored response of [min score < threshold].
MetricValue compute_flexibility(std::span<const PromptOutcome> outcomes, double threshold = 0.0);

/// Mean over prompts with a scored response of (1 - min score) / 2.
MetricValue compute_originality(std::span<const PromptOutcome> outcomes);

enum class ElaborationRule { Any, All };

/// True iff some functional response instantiates at least one (or, with
/// ElaborationRule::All, every) module defined by the case's submodules.
/// Responses outside the parser subset count as not elaborated.
bool check_elaboration(std::span<const std::string> functional_responses, const corpus::PromptCase& c,
                       ElaborationRule rule = ElaborationRule::Any);

/// count(true) / p. ZeroPrompts when p is 0.
double compute_elaboration(const std::vector<bool>& flags, std::size_t p);

struct Weights {
  double fluency = 0.25;
  double flexibility = 0.25;
  double originality = 0.25;
  double elaboration = 0.25;

  /// BadWeights unless all are non-negative and they sum to 1 (1e-9).
  void validate() const;
  bool operator==(const Weights&) const = default;
};

double compute_creativity(double f, double x, double o, double e, const Weights& w = {});

/// Fraction of prompts with at least one functional response. ZeroPrompts
/// for an empty list.
double compute_functionality(const std::vector<bool>& any_pass);

/// Per-experiment work-unit accounting.
struct Accounting {
  int generated = 0;
  int simulated = 0;
  int functional = 0;
  int scored = 0;
  int unscorable = 0;
  int timeouts = 0;

  bool operator==(const Accounting&) const = default;
};

inline constexpr std::string_view kFlagNoFunctional = "NoFunctionalResponses";
inline constexpr std::string_view kFlagNotAllComponents = "NotAllComponents";
inline constexpr std::string_view kFlagTimeouts = "SimulationTimeouts";
inline constexpr std::string_view kFlagUnscorable = "UnscorableResponses";

struct MetricReport {
  std::string model_id;
  // nullopt: the experiment feeding the metric was not run.
  std::optional<double> functionality;
  std::optional<double> fluency;
  std::optional<double> flexibility;
  std::optional<double> originality;
  std::optional<double> elaboration;
  std::optional<double> creativity;
  std::map<std::string, int> n_per_metric;
  Weights weights;
  std::map<std::string, std::set<std::string>> flags;  // metric -> flags
  std::map<std::string, Accounting> accounting;       // experiment -> counts
  std::vector<PromptOutcome> per_prompt;

  bool operator==(const MetricReport&) const = default;
};

struct MetricOptions {
  int t = 10;
  double threshold = 0.0;
  FluencyOptions fluency;
  ElaborationRule elaboration_rule = ElaborationRule::Any;
  Weights weights;
  /// Sizes of the prompt sets, for prompts that produced no outcome.
  std::size_t p_single = 0;
  std::size_t p_multi = 0;
};

/// Computes every metric whose experiment appears in `experiments` from
/// the outcomes (any order). Elaboration outcomes must carry `elaborated`.
MetricReport build_report(std::string model_id, std::vector<PromptOutcome> outcomes,
                          const std::set<Experiment>& experiments, const MetricOptions& opts,
                          std::map<std::string, Accounting> accounting = {});

void to_json(nlohmann::json& j, const PromptOutcome& o);
void from_json(const nlohmann::json& j, PromptOutcome& o);
void to_json(nlohmann::json& j, const Weights& w);
void from_json(const nlohmann::json& j, Weights& w);
void to_json(nlohmann::json& j, const MetricReport& r);
void from_json(const nlohmann::json& j, MetricReport& r);

}  // namespace creativ::metrics
