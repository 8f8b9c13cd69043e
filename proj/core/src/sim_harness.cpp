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
#include "creativ/sim_harness.hpp"

#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <regex>

#include "creativ/error.hpp"
#include "creativ/parallel.hpp"
#include "creativ/pattern.hpp"
#include "creativ/process.hpp"

namespace creativ::sim {
namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw Error(ErrorCode::UnwritableOutput, "cannot write " + path.string());
}

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

struct Placeholders {
  std::vector<std::string> sources;
  std::string out;
  std::string tb_top;
  std::string workdir;
};

std::vector<std::string> expand(const std::string& tmpl, const Placeholders& p) {
  std::vector<std::string> argv;
  for (auto& tok : split_command(tmpl)) {
    if (tok == "{sources}") {
      argv.insert(argv.end(), p.sources.begin(), p.sources.end());
      continue;
    }
    std::string a = replace_all(tok, "{out}", p.out);
    a = replace_all(a, "{tb_top}", p.tb_top);
    a = replace_all(a, "{workdir}", p.workdir);
    argv.push_back(std::move(a));
  }
  return argv;
}

// Shell convention for "command not found", used by wrapper scripts too.
constexpr int kNotFoundExit = 127;

[[noreturn]] void simulator_not_found(const std::vector<std::string>& argv, const std::string& detail) {
  throw Error(ErrorCode::SimulatorNotFound, "'" + argv.front() + "': " + detail);
}

FunctionalityResult run_check(std::string_view candidate, const corpus::PromptCase& c, const SimConfig& cfg,
                              const WorkUnit& unit, const fs::path& dir) {
  FunctionalityResult res{unit.case_id, unit.experiment, unit.sample_index, Verdict::FailCompile, {}, 0.0};
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::UnwritableOutput, "cannot create " + dir.string() + ": " + ec.message());

  Placeholders p;
  p.workdir = fs::absolute(dir).string();
  p.out = (fs::absolute(dir) / "sim.out").string();
  p.tb_top = testbench_top(c.testbench);
  write_file(dir / "testbench.v", c.testbench);
  p.sources.push_back("testbench.v");
  for (std::size_t i = 0; i < c.submodules.size(); ++i) {
    std::string name = "submodule_" + std::to_string(i) + ".v";
    write_file(dir / name, c.submodules[i]);
    p.sources.push_back(name);
  }
  write_file(dir / "candidate.v", candidate);
  p.sources.push_back("candidate.v");

  auto finish = [&](Verdict v) {
    res.verdict = v;
    if (v == Verdict::Pass || !cfg.keep_failures) fs::remove_all(dir, ec);
    else write_file(dir / "sim.log", res.log);
    return res;
  };

  if (candidate.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    res.log = "empty candidate\n";
    return finish(Verdict::FailCompile);
  }

  ProcessOptions opts;
  opts.working_dir = dir;
  opts.merge_stderr = true;
  opts.timeout_seconds = cfg.compile_timeout_seconds.value_or(cfg.timeout_seconds);
  auto compile_argv = expand(cfg.compile_cmd, p);
  ProcessResult comp = run_process(compile_argv, opts);
  res.wall_time += comp.wall_seconds;
  res.log += comp.out;
  if (comp.launch_failed) simulator_not_found(compile_argv, std::strerror(comp.launch_errno));
  if (!comp.timed_out && comp.exit_code == kNotFoundExit) simulator_not_found(compile_argv, comp.out);
  if (comp.timed_out) {
    res.log += "\ncompile timed out\n";
    return finish(Verdict::Timeout);
  }
  if (comp.exit_code != 0) return finish(Verdict::FailCompile);

  opts.timeout_seconds = cfg.timeout_seconds;
  auto run_argv = expand(cfg.run_cmd, p);
  ProcessResult run = run_process(run_argv, opts);
  res.wall_time += run.wall_seconds;
  res.log += run.out;
  if (run.launch_failed) simulator_not_found(run_argv, std::strerror(run.launch_errno));
  if (run.timed_out) {
    res.log += "\nsimulation timed out\n";
    return finish(Verdict::Timeout);
  }
  if (run.exit_code != 0) return finish(Verdict::FailSim);
  const corpus::PassRule& rule = c.pass_rule ? *c.pass_rule : cfg.default_pass_rule;
  return finish(apply_pass_rule(run.out, true, rule) ? Verdict::Pass : Verdict::FailRule);
}

}  // namespace

void SimConfig::validate() const {
  if (!(timeout_seconds > 0)) throw Error(ErrorCode::InvalidConfig, "sim timeout must be positive");
  if (compile_timeout_seconds && !(*compile_timeout_seconds > 0)) {
    throw Error(ErrorCode::InvalidConfig, "sim compile timeout must be positive");
  }
  if (compile_cmd.find("{sources}") == std::string::npos || compile_cmd.find("{out}") == std::string::npos) {
    throw Error(ErrorCode::InvalidConfig, "compile command needs {sources} and {out}: " + compile_cmd);
  }
  if (run_cmd.find("{out}") == std::string::npos) {
    throw Error(ErrorCode::InvalidConfig, "run command needs {out}: " + run_cmd);
  }
  if (jobs < 1) throw Error(ErrorCode::InvalidConfig, "sim jobs must be >= 1");
  compile_pattern(default_pass_rule.failure_pattern);
  if (default_pass_rule.pass_pattern) compile_pattern(*default_pass_rule.pass_pattern);
}

fs::path SimConfig::effective_workdir_root() const {
  return workdir_root.empty() ? fs::temp_directory_path() / "creativ-sim" : workdir_root;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::FailCompile: return "fail_compile";
    case Verdict::FailSim: return "fail_sim";
    case Verdict::FailRule: return "fail_rule";
    case Verdict::Timeout: return "timeout";
  }
  return "fail_compile";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  for (Verdict v : {Verdict::Pass, Verdict::FailCompile, Verdict::FailSim, Verdict::FailRule, Verdict::Timeout}) {
    if (to_string(v) == text) return v;
  }
  return std::nullopt;
}

bool apply_pass_rule(std::string_view log, bool exit_ok, const corpus::PassRule& rule) {
  if (!exit_ok) return false;
  const std::string text(log);
  if (std::regex_search(text, compile_pattern(rule.failure_pattern))) return false;
  return !rule.pass_pattern || std::regex_search(text, compile_pattern(*rule.pass_pattern));
}

std::string testbench_top(std::string_view testbench) {
  static const std::regex header(R"((?:^|[^A-Za-z0-9_$])module\s+([A-Za-z_][A-Za-z0-9_$]*))");
  // Comments may mention "module"; strip them first.
  static const std::regex comments(R"(//[^\n]*|/\*[\s\S]*?\*/)");
  std::string text = std::regex_replace(std::string(testbench), comments, " ");
  std::smatch m;
  return std::regex_search(text, m, header) ? m[1].str() : std::string();
}

FunctionalityResult check_functionality(std::string_view candidate, const corpus::PromptCase& c,
                                        const SimConfig& cfg, const WorkUnit& unit) {
  fs::path dir = cfg.effective_workdir_root() / unit.case_id / std::string(to_string(unit.experiment)) /
                 std::to_string(unit.sample_index);
  return run_check(candidate, c, cfg, unit, dir);
}

ValidationReport validate_corpus(const corpus::Corpus& corpus, const SimConfig& cfg) {
  ValidationReport report;
  report.checked = corpus.cases.size();
  std::vector<FunctionalityResult> results(corpus.cases.size());
  parallel_for(corpus.cases.size(), cfg.jobs, [&](std::size_t i) {
    const auto& c = corpus.cases[i];
    WorkUnit unit{c.id, c.kind == corpus::CaseKind::Multi ? Experiment::Elaboration : Experiment::Completion, 0};
    results[i] = run_check(c.golden_solution, c, cfg, unit, cfg.effective_workdir_root() / ".golden" / c.id);
  });
  for (auto& r : results) {
    if (!r.passed()) report.failures.push_back(std::move(r));
  }
  return report;
}

}  // namespace creativ::sim
