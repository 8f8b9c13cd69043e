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
#include "creativ/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "creativ/error.hpp"
#include "creativ/hdl/parser.hpp"

namespace creativ::metrics {
using nlohmann::json;

namespace {

// Sums in sorted order so the result does not depend on outcome order.
double mean_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

std::optional<double> PromptOutcome::min_score() const {
  if (scores.empty()) return std::nullopt;
  return *std::min_element(scores.begin(), scores.end());
}

int unique_count(std::span<const double> scores, double eps) {
  if (scores.empty()) return 0;
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  int clusters = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - sorted[i - 1] > eps) ++clusters;
  }
  return clusters;
}

int unique_count_pairwise(const std::vector<std::vector<double>>& similarity, double eps) {
  const std::size_t n = similarity.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int groups = static_cast<int>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n && j < similarity[i].size(); ++j) {
      if (similarity[i][j] >= 1.0 - eps) {
        std::size_t a = find(i), b = find(j);
        if (a != b) {
          parent[a] = b;
          --groups;
        }
      }
    }
  }
  return groups;
}

MetricValue compute_fluency(std::span<const PromptOutcome> outcomes, int t, const FluencyOptions& opts) {
  if (t <= 0) throw Error(ErrorCode::InvalidConfig, "fluency needs t > 0");
  std::vector<double> per_prompt;
  for (const auto& o : outcomes) {
    if (o.m() < 1) continue;
    int unique = opts.pairwise ? unique_count_pairwise(o.pairwise, opts.eps) : unique_count(o.scores, opts.eps);
    int denom = opts.normalization == FluencyNormalization::ByFunctional ? o.m() : t;
    per_prompt.push_back(static_cast<double>(unique) / denom);
  }
  int n = static_cast<int>(per_prompt.size());
  return {mean_of(std::move(per_prompt)), n};
}

MetricValue compute_flexibility(std::span<const PromptOutcome> outcomes, double threshold) {
  if (!(threshold >= -1.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "flexibility threshold must be in [-1, 1]");
  }
  std::vector<double> per_prompt;
  for (const auto& o : outcomes) {
    if (auto min = o.min_score()) per_prompt.push_back(*min < threshold ? 1.0 : 0.0);
  }
  int n = static_cast<int>(per_prompt.size());
  return {mean_of(std::move(per_prompt)), n};
}

MetricValue compute_originality(std::span<const PromptOutcome> outcomes) {
  std::vector<double> per_prompt;
  for (const auto& o : outcomes) {
    if (auto min = o.min_score()) per_prompt.push_back((-*min + 1.0) / 2.0);
  }
  int n = static_cast<int>(per_prompt.size());
  return {mean_of(std::move(per_prompt)), n};
}

bool check_elaboration(std::span<const std::string> functional_responses, const corpus::PromptCase& c,
                       ElaborationRule rule) {
  std::vector<std::string> provided;
  try {
    provided = corpus::submodule_names(c);
  } catch (const Error&) {
    return false;
  }
  if (provided.empty()) return false;
  const std::string top = c.top_module_name();
  for (const auto& text : functional_responses) {
    std::vector<hdl::ModuleAst> modules;
    try {
      modules = hdl::parse_source(text);
    } catch (const Error&) {
      continue;
    }
    const hdl::ModuleAst* m = nullptr;
    for (const auto& mod : modules) {
      if (mod.name == top) m = &mod;
    }
    if (!m && !modules.empty()) m = &modules.front();
    if (!m) continue;
    auto used = hdl::instantiated_modules(*m);
    std::size_t hits = 0;
    for (const auto& name : provided) hits += used.count(name);
    if (rule == ElaborationRule::Any ? hits > 0 : hits == provided.size()) return true;
  }
  return false;
}

double compute_elaboration(const std::vector<bool>& flags, std::size_t p) {
  if (p == 0) throw Error(ErrorCode::ZeroPrompts, "elaboration needs at least one multi-module prompt");
  auto k = std::count(flags.begin(), flags.end(), true);
  return static_cast<double>(k) / static_cast<double>(p);
}

void Weights::validate() const {
  for (double w : {fluency, flexibility, originality, elaboration}) {
    if (!(w >= 0.0)) throw Error(ErrorCode::BadWeights, "weights must be non-negative");
  }
  double sum = fluency + flexibility + originality + elaboration;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::BadWeights, "weights sum to " + std::to_string(sum) + ", expected 1");
  }
}

double compute_creativity(double f, double x, double o, double e, const Weights& w) {
  w.validate();
  return w.fluency * f + w.flexibility * x + w.originality * o + w.elaboration * e;
}

double compute_functionality(const std::vector<bool>& any_pass) {
  if (any_pass.empty()) throw Error(ErrorCode::ZeroPrompts, "functionality needs at least one prompt");
  auto k = std::count(any_pass.begin(), any_pass.end(), true);
  return static_cast<double>(k) / static_cast<double>(any_pass.size());
}

MetricReport build_report(std::string model_id, std::vector<PromptOutcome> outcomes,
                          const std::set<Experiment>& experiments, const MetricOptions& opts,
                          std::map<std::string, Accounting> accounting) {
  opts.weights.validate();
  std::sort(outcomes.begin(), outcomes.end(), [](const PromptOutcome& a, const PromptOutcome& b) {
    return std::tie(a.experiment, a.case_id) < std::tie(b.experiment, b.case_id);
  });
  MetricReport r;
  r.model_id = std::move(model_id);
  r.weights = opts.weights;
  r.accounting = std::move(accounting);

  auto of = [&](Experiment e) {
    std::vector<PromptOutcome> out;
    for (const auto& o : outcomes) {
      if (o.experiment == e) out.push_back(o);
    }
    return out;
  };
  auto unscorable = [](const std::vector<PromptOutcome>& os) {
    int total = 0;
    for (const auto& o : os) total += o.unscorable_count;
    return total;
  };
  auto note = [&](const std::string& metric, const MetricValue& v, int unscored) {
    r.n_per_metric[metric] = v.n;
    if (v.degenerate()) r.flags[metric].insert(std::string(kFlagNoFunctional));
    if (unscored > 0) r.flags[metric].insert(std::string(kFlagUnscorable));
  };

  std::vector<bool> any_pass;
  std::size_t p = 0;
  if (experiments.count(Experiment::Completion)) {
    auto comp = of(Experiment::Completion);
    MetricValue f = compute_fluency(comp, opts.t, opts.fluency);
    MetricValue o = compute_originality(comp);
    r.fluency = f.value;
    r.originality = o.value;
    note("fluency", f, unscorable(comp));
    note("originality", o, unscorable(comp));
    for (const auto& c : comp) any_pass.push_back(c.m() > 0);
    p += std::max(opts.p_single, comp.size());
  }
  if (experiments.count(Experiment::Rewrite)) {
    auto rw = of(Experiment::Rewrite);
    MetricValue x = compute_flexibility(rw, opts.threshold);
    r.flexibility = x.value;
    note("flexibility", x, unscorable(rw));
  }
  if (experiments.count(Experiment::Elaboration)) {
    auto el = of(Experiment::Elaboration);
    std::vector<bool> flags;
    for (const auto& c : el) {
      flags.push_back(c.elaborated.value_or(false));
      any_pass.push_back(c.m() > 0);
    }
    std::size_t p_multi = std::max(opts.p_multi, el.size());
    r.elaboration = compute_elaboration(flags, p_multi);
    r.n_per_metric["elaboration"] = static_cast<int>(p_multi);
    p += p_multi;
  }
  if (p > 0) {
    any_pass.resize(p, false);
    r.functionality = compute_functionality(any_pass);
    r.n_per_metric["functionality"] = static_cast<int>(p);
    for (const auto& [exp, acc] : r.accounting) {
      if (acc.timeouts > 0) r.flags["functionality"].insert(std::string(kFlagTimeouts));
    }
  }
  if (r.fluency && r.flexibility && r.originality && r.elaboration) {
    r.creativity = compute_creativity(*r.fluency, *r.flexibility, *r.originality, *r.elaboration, opts.weights);
  } else {
    r.flags["creativity"].insert(std::string(kFlagNotAllComponents));
  }
  r.per_prompt = std::move(outcomes);
  return r;
}

// JSON ---------------------------------------------------------------------

void to_json(json& j, const PromptOutcome& o) {
  j = json{{"case_id", o.case_id},
           {"experiment", to_string(o.experiment)},
           {"t", o.t},
           {"functional_indices", o.functional_indices},
           {"scores", o.scores},
           {"unscorable_count", o.unscorable_count}};
  j["elaborated"] = o.elaborated ? json(*o.elaborated) : json(nullptr);
  if (!o.pairwise.empty()) j["pairwise"] = o.pairwise;
}

void from_json(const json& j, PromptOutcome& o) {
  o.case_id = j.at("case_id").get<std::string>();
  auto e = parse_experiment(j.at("experiment").get<std::string>());
  if (!e) throw Error(ErrorCode::InvalidConfig, "unknown experiment in report");
  o.experiment = *e;
  o.t = j.at("t").get<int>();
  o.functional_indices = j.at("functional_indices").get<std::vector<int>>();
  o.scores = j.at("scores").get<std::vector<double>>();
  o.unscorable_count = j.at("unscorable_count").get<int>();
  if (j.contains("elaborated") && !j["elaborated"].is_null()) o.elaborated = j["elaborated"].get<bool>();
  else o.elaborated.reset();
  o.pairwise = j.contains("pairwise") ? j["pairwise"].get<std::vector<std::vector<double>>>()
                                      : std::vector<std::vector<double>>{};
}

void to_json(json& j, const Weights& w) {
  j = json{{"fluency", w.fluency}, {"flexibility", w.flexibility}, {"originality", w.originality},
           {"elaboration", w.elaboration}};
}

void from_json(const json& j, Weights& w) {
  Weights d;
  w.fluency = j.value("fluency", d.fluency);
  w.flexibility = j.value("flexibility", d.flexibility);
  w.originality = j.value("originality", d.originality);
  w.elaboration = j.value("elaboration", d.elaboration);
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* k) {
  if (!j.contains(k) || j.at(k).is_null()) return std::nullopt;
  return j.at(k).get<double>();
}

}  // namespace

void to_json(json& j, const MetricReport& r) {
  json acc = json::object();
  for (const auto& [exp, a] : r.accounting) {
    acc[exp] = json{{"generated", a.generated}, {"simulated", a.simulated}, {"functional", a.functional},
                    {"scored", a.scored},       {"unscorable", a.unscorable}, {"timeouts", a.timeouts}};
  }
  json flags = json::object();
  for (const auto& [metric, set] : r.flags) flags[metric] = std::vector<std::string>(set.begin(), set.end());
  j = json{{"model_id", r.model_id},
           {"functionality", optional_number(r.functionality)},
           {"fluency", optional_number(r.fluency)},
           {"flexibility", optional_number(r.flexibility)},
           {"originality", optional_number(r.originality)},
           {"elaboration", optional_number(r.elaboration)},
           {"creativity", optional_number(r.creativity)},
           {"n_per_metric", r.n_per_metric},
           {"weights", r.weights},
           {"flags", flags},
           {"accounting", acc},
           {"per_prompt", r.per_prompt}};
}

void from_json(const json& j, MetricReport& r) {
  r.model_id = j.at("model_id").get<std::string>();
  r.functionality = read_optional(j, "functionality");
  r.fluency = read_optional(j, "fluency");
  r.flexibility = read_optional(j, "flexibility");
  r.originality = read_optional(j, "originality");
  r.elaboration = read_optional(j, "elaboration");
  r.creativity = read_optional(j, "creativity");
  r.n_per_metric = j.value("n_per_metric", std::map<std::string, int>{});
  r.weights = j.value("weights", Weights{});
  r.flags.clear();
  if (j.contains("flags")) {
    for (const auto& [metric, list] : j["flags"].items()) {
      for (const auto& f : list) r.flags[metric].insert(f.get<std::string>());
    }
  }
  r.accounting.clear();
  if (j.contains("accounting")) {
    for (const auto& [exp, a] : j["accounting"].items()) {
      r.accounting[exp] = Accounting{a.value("generated", 0), a.value("simulated", 0), a.value("functional", 0),
                                     a.value("scored", 0),    a.value("unscorable", 0), a.value("timeouts", 0)};
    }
  }
  r.per_prompt = j.value("per_prompt", std::vector<PromptOutcome>{});
}

}  // namespace creativ::metrics
