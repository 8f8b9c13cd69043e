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
#include "creativ/pipeline.hpp"

#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <map>

#include <nlohmann/json.hpp>

#include "creativ/error.hpp"
#include "creativ/hdl/parser.hpp"
#include "creativ/parallel.hpp"
#include "creativ/report.hpp"

namespace creativ::pipeline {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Simulation cache key. Candidates that print to the same AST behave the
// same; anything with a compiler directive or outside the parser subset
// falls back to its exact text.
std::string canonical_candidate(const std::string& text) {
  if (text.find('`') == std::string::npos) {
    try {
      std::string out = "ast:";
      for (const auto& m : hdl::parse_source(text)) out += hdl::print_module(m);
      return out;
    } catch (const std::exception&) {
    }
  }
  return "raw:" + text;
}

constexpr std::size_t kMaxLoggedOutput = 4096;

std::string corpus_digest(const corpus::Corpus& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  auto mix = [&](std::string_view s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  for (const auto& pc : c.cases) {
    mix(pc.id);
    mix(pc.description);
    mix(pc.interface_decl);
    mix(pc.golden_solution);
    mix(pc.testbench);
    for (const auto& s : pc.submodules) mix(s);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

json experiment_list(const std::set<Experiment>& es) {
  json out = json::array();
  for (Experiment e : es) out.push_back(to_string(e));
  return out;
}

std::vector<WorkUnit> work_units(const corpus::Corpus& corpus, const RunConfig& cfg) {
  std::vector<WorkUnit> units;
  for (Experiment e : cfg.experiments) {
    for (const auto& c : corpus.cases) {
      if (!corpus::experiment_applies(e, c.kind)) continue;
      for (int i = 0; i < cfg.sampling.t; ++i) units.push_back({c.id, e, i});
    }
  }
  return units;
}

struct LogIndex {
  std::map<WorkUnit, llm::GenerationRecord> generated;
  std::map<WorkUnit, json> simulated;
  std::map<WorkUnit, json> scored;
  std::map<WorkUnit, json> elaborated;
};

LogIndex index_events(const std::vector<json>& events) {
  LogIndex idx;
  for (const auto& e : events) {
    WorkUnit u = RunStore::unit_of(e);
    switch (RunStore::stage_of(e)) {
      case Stage::Generate: idx.generated.emplace(u, e.at("record").get<llm::GenerationRecord>()); break;
      case Stage::Simulate: idx.simulated.emplace(u, e); break;
      case Stage::Score: idx.scored.emplace(u, e); break;
      case Stage::Elaborate: idx.elaborated.emplace(u, e); break;
      default: break;
    }
  }
  return idx;
}

sim::Verdict verdict_of(const json& event) {
  auto v = sim::parse_verdict(event.at("verdict").get<std::string>());
  if (!v) throw Error(ErrorCode::InvalidConfig, "unknown verdict " + event.at("verdict").dump());
  return *v;
}

std::string clip(std::string s) {
  if (s.size() > kMaxLoggedOutput) {
    s.resize(kMaxLoggedOutput);
    s += "\n[truncated]\n";
  }
  return s;
}

class Progress {
 public:
  Progress(const RunHooks& hooks, Stage stage) : hooks_(hooks), stage_(stage) {}
  void event() {
    std::size_t n = ++count_;
    if (hooks_.after_event) hooks_.after_event(stage_, n);
  }
  void done() {
    if (hooks_.log) hooks_.log(std::string(to_string(stage_)) + ": " + std::to_string(count_.load()) + " new");
    if (hooks_.after_stage) hooks_.after_stage(stage_);
  }

 private:
  const RunHooks& hooks_;
  Stage stage_;
  std::atomic<std::size_t> count_{0};
};

}  // namespace

std::unique_ptr<llm::Backend> make_generation_backend(const RunConfig& cfg,
                                                      std::function<void(const std::string&)> log) {
  if (cfg.backend == GenerationBackend::Replay) return std::make_unique<llm::ReplayBackend>(cfg.replay_store);
  return std::make_unique<llm::HttpBackend>(cfg.http, std::move(log));
}

std::unique_ptr<similarity::SimilarityBackend> make_similarity_backend(const RunConfig& cfg) {
  if (cfg.similarity == SimilarityKind::Builtin) return std::make_unique<similarity::WlKernelBackend>(cfg.kernel);
  return std::make_unique<similarity::AdapterBackend>(cfg.adapter_cmd);
}

metrics::MetricReport run_evaluation(const RunConfig& cfg, const RunHooks& hooks) {
  cfg.validate();
  const corpus::Corpus corpus = corpus::load_corpus(cfg.corpus_path);
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw Error(ErrorCode::UnwritableOutput, cfg.output_dir.string() + ": " + ec.message());

  RunStore store(cfg.run_log_path(), cfg.resume);
  const json header{{"model_id", cfg.model_id},
                    {"t", cfg.sampling.t},
                    {"experiments", experiment_list(cfg.experiments)},
                    {"corpus_digest", corpus_digest(corpus)}};
  for (const auto& e : store.events()) {
    if (RunStore::stage_of(e) != Stage::Run) continue;
    for (const auto& [k, v] : header.items()) {
      if (e.value(k, json()) != v) {
        throw Error(ErrorCode::InvalidConfig, "cannot resume: run log was written with a different " + k);
      }
    }
  }
  store.append(Stage::Run, {}, header);

  if (!store.has(Stage::Validate, {})) {
    sim::ValidationReport v = sim::validate_corpus(corpus, cfg.sim);
    if (!v.ok()) {
      std::string ids;
      for (const auto& f : v.failures) ids += (ids.empty() ? "" : ", ") + f.case_id + " (" + std::string(sim::to_string(f.verdict)) + ")";
      throw Error(ErrorCode::CorpusInvalid, "golden solutions fail their testbenches: " + ids);
    }
    store.append(Stage::Validate, {}, json{{"checked", v.checked}});
  }
  Progress(hooks, Stage::Validate).done();

  const std::vector<WorkUnit> units = work_units(corpus, cfg);

  // Generation.
  {
    std::unique_ptr<llm::Backend> owned;
    llm::Backend* backend = hooks.backend;
    if (!backend) {
      owned = make_generation_backend(cfg, hooks.log);
      backend = owned.get();
    }
    std::vector<WorkUnit> todo;
    for (const auto& u : units) {
      if (!store.has(Stage::Generate, u)) todo.push_back(u);
    }
    std::map<std::pair<std::string, Experiment>, std::string> prompts;
    for (const auto& u : todo) {
      auto key = std::pair(u.case_id, u.experiment);
      if (!prompts.count(key)) prompts[key] = corpus::build_prompt(u.experiment, *corpus.find(u.case_id), cfg.templates);
    }
    Progress progress(hooks, Stage::Generate);
    parallel_for(todo.size(), cfg.generation_jobs, [&](std::size_t k) {
      const WorkUnit& u = todo[k];
      llm::GenerationRequest req{u.case_id, u.experiment, prompts.at({u.case_id, u.experiment})};
      llm::GenerationRecord rec = llm::generate_one(req, u.sample_index, cfg.sampling, *backend);
      store.append(Stage::Generate, u, json{{"record", rec}});
      progress.event();
    });
    progress.done();
  }

  // Simulation. Equivalent candidates for the same case share one verdict,
  // and a candidate equal to the validated golden passes without a run.
  {
    LogIndex idx = index_events(store.events());
    auto candidate_of = [&](const WorkUnit& u) {
      return corpus::candidate_source(u.experiment, *corpus.find(u.case_id), idx.generated.at(u).trimmed_text);
    };
    using Key = std::pair<std::string, std::string>;
    std::map<Key, json> known;
    for (const auto& c : corpus.cases) {
      known.emplace(Key{c.id, canonical_candidate(c.golden_solution)},
                    json{{"verdict", sim::to_string(sim::Verdict::Pass)}, {"log", "same as golden solution"}});
    }
    std::map<Key, std::string> sources;
    for (const auto& [u, e] : idx.simulated) {
      known.emplace(Key{u.case_id, canonical_candidate(candidate_of(u))}, e);
    }
    std::map<Key, std::vector<WorkUnit>> groups;
    std::vector<Key> order;
    for (const auto& u : units) {
      if (idx.simulated.count(u)) continue;
      std::string src = candidate_of(u);
      Key key{u.case_id, canonical_candidate(src)};
      sources.try_emplace(key, std::move(src));
      auto [it, inserted] = groups.try_emplace(key);
      if (inserted) order.push_back(key);
      it->second.push_back(u);
    }
    Progress progress(hooks, Stage::Simulate);
    auto record = [&](const WorkUnit& u, const json& result, bool reused) {
      json payload{{"verdict", result.at("verdict")}, {"wall_time", result.value("wall_time", 0.0)},
                   {"log", result.value("log", std::string())}};
      if (reused) payload["reused"] = true;
      store.append(Stage::Simulate, u, std::move(payload));
      progress.event();
    };
    parallel_for(order.size(), cfg.sim.jobs, [&](std::size_t k) {
      const Key& key = order[k];
      const auto& members = groups.at(key);
      json result;
      bool reused = false;
      if (auto it = known.find(key); it != known.end()) {
        result = it->second;
        reused = true;
      } else {
        auto fr = sim::check_functionality(sources.at(key), *corpus.find(key.first), cfg.sim, members.front());
        result = json{{"verdict", sim::to_string(fr.verdict)}, {"wall_time", fr.wall_time}, {"log", clip(fr.log)}};
      }
      for (std::size_t m = 0; m < members.size(); ++m) record(members[m], result, reused || m > 0);
    });
    progress.done();
  }

  // Similarity scoring of functional completion and rewrite responses.
  {
    LogIndex idx = index_events(store.events());
    std::vector<similarity::ScoreRequest> requests;
    for (const auto& u : units) {
      if (u.experiment == Experiment::Elaboration || store.has(Stage::Score, u)) continue;
      if (verdict_of(idx.simulated.at(u)) != sim::Verdict::Pass) continue;
      const auto* c = corpus.find(u.case_id);
      requests.push_back({u, corpus::candidate_source(u.experiment, *c, idx.generated.at(u).trimmed_text), c});
    }
    Progress progress(hooks, Stage::Score);
    if (!requests.empty()) {
      auto backend = make_similarity_backend(cfg);
      auto outcomes = similarity::score_batch(requests, *backend);
      for (std::size_t k = 0; k < requests.size(); ++k) {
        json payload;
        if (const auto* s = std::get_if<similarity::SimilarityScore>(&outcomes[k])) {
          payload = json{{"value", s->value}, {"backend_id", s->backend_id}};
        } else {
          payload = json{{"unscorable", std::get<similarity::Unscorable>(outcomes[k]).reason}};
        }
        store.append(Stage::Score, requests[k].unit, std::move(payload));
        progress.event();
      }
    }
    progress.done();
  }

  // Submodule use by functional elaboration responses.
  {
    LogIndex idx = index_events(store.events());
    Progress progress(hooks, Stage::Elaborate);
    for (const auto& u : units) {
      if (u.experiment != Experiment::Elaboration || store.has(Stage::Elaborate, u)) continue;
      if (verdict_of(idx.simulated.at(u)) != sim::Verdict::Pass) continue;
      const auto* c = corpus.find(u.case_id);
      std::vector<std::string> one{corpus::candidate_source(u.experiment, *c, idx.generated.at(u).trimmed_text)};
      store.append(Stage::Elaborate, u,
                   json{{"any", metrics::check_elaboration(one, *c, metrics::ElaborationRule::Any)},
                        {"all", metrics::check_elaboration(one, *c, metrics::ElaborationRule::All)}});
      progress.event();
    }
    progress.done();
  }

  // The report is a function of the log on disk, not of in-memory state.
  metrics::MetricReport report = derive_report(RunStore::load(store.path()), corpus, cfg);
  write_reports(report, cfg.output_dir);
  return report;
}

metrics::MetricReport derive_report(const std::vector<json>& events, const corpus::Corpus& corpus,
                                    const RunConfig& cfg) {
  LogIndex idx = index_events(events);
  auto incomplete = [](const WorkUnit& u, Stage s) {
    return Error(ErrorCode::InvalidConfig, "run log incomplete: no " + std::string(to_string(s)) + " event for " +
                                               u.case_id + "/" + std::string(to_string(u.experiment)) + "/" +
                                               std::to_string(u.sample_index));
  };

  std::vector<metrics::PromptOutcome> outcomes;
  std::map<std::string, metrics::Accounting> accounting;
  for (Experiment e : cfg.experiments) {
    metrics::Accounting& acc = accounting[std::string(to_string(e))];
    for (const auto& c : corpus.cases) {
      if (!corpus::experiment_applies(e, c.kind)) continue;
      metrics::PromptOutcome o;
      o.case_id = c.id;
      o.experiment = e;
      o.t = cfg.sampling.t;
      bool elaborated = false;
      std::vector<std::string> scored_candidates;
      for (int i = 0; i < cfg.sampling.t; ++i) {
        WorkUnit u{c.id, e, i};
        if (!idx.generated.count(u)) throw incomplete(u, Stage::Generate);
        ++acc.generated;
        auto sim_it = idx.simulated.find(u);
        if (sim_it == idx.simulated.end()) throw incomplete(u, Stage::Simulate);
        ++acc.simulated;
        sim::Verdict v = verdict_of(sim_it->second);
        if (v == sim::Verdict::Timeout) ++acc.timeouts;
        if (v != sim::Verdict::Pass) continue;
        ++acc.functional;
        o.functional_indices.push_back(i);
        if (e == Experiment::Elaboration) {
          auto el = idx.elaborated.find(u);
          if (el == idx.elaborated.end()) throw incomplete(u, Stage::Elaborate);
          const char* rule = cfg.elaboration_rule == metrics::ElaborationRule::Any ? "any" : "all";
          elaborated = elaborated || el->second.at(rule).get<bool>();
          continue;
        }
        auto sc = idx.scored.find(u);
        if (sc == idx.scored.end()) throw incomplete(u, Stage::Score);
        if (sc->second.contains("value")) {
          o.scores.push_back(sc->second.at("value").get<double>());
          ++acc.scored;
          scored_candidates.push_back(corpus::candidate_source(e, c, idx.generated.at(u).trimmed_text));
        } else {
          ++o.unscorable_count;
          ++acc.unscorable;
        }
      }
      if (e == Experiment::Elaboration) o.elaborated = elaborated;
      if (cfg.pairwise_fluency && e == Experiment::Completion) {
        std::vector<hdl::Dfg> graphs;
        for (const auto& text : scored_candidates) {
          // An adapter may score text outside the parser subset; such a
          // response stays in a group of its own.
          auto g = similarity::candidate_graph(text, c);
          if (auto* dfg = std::get_if<hdl::Dfg>(&g)) graphs.push_back(std::move(*dfg));
          else graphs.push_back(hdl::Dfg{{{0, "unparsed:" + std::to_string(graphs.size())}}, {}, false});
        }
        o.pairwise.assign(graphs.size(), std::vector<double>(graphs.size(), 1.0));
        for (std::size_t a = 0; a < graphs.size(); ++a) {
          for (std::size_t b = a + 1; b < graphs.size(); ++b) {
            o.pairwise[a][b] = o.pairwise[b][a] = similarity::wl_similarity(graphs[a], graphs[b], cfg.kernel);
          }
        }
      }
      outcomes.push_back(std::move(o));
    }
  }

  metrics::MetricOptions opts;
  opts.t = cfg.sampling.t;
  opts.threshold = cfg.threshold;
  opts.fluency = {cfg.eps, cfg.fluency_normalization, cfg.pairwise_fluency};
  opts.elaboration_rule = cfg.elaboration_rule;
  opts.weights = cfg.weights;
  opts.p_single = corpus.p_single;
  opts.p_multi = corpus.p_multi;
  return metrics::build_report(cfg.model_id, std::move(outcomes), cfg.experiments, opts, std::move(accounting));
}

}  // namespace creativ::pipeline
