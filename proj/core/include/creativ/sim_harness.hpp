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
// Functional checking of candidate modules with an external simulator.
//
// Command templates are split on whitespace (quotes honored) and expanded
// per argument:
//   {sources}  testbench, submodules, candidate (one argument each)
//   {out}      simulation binary path
//   {tb_top}   name of the testbench top module
//   {workdir}  absolute path of the per-check working directory

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "creativ/corpus.hpp"
#include "creativ/experiment.hpp"

namespace creativ::sim {

inline constexpr std::string_view kDefaultFailurePattern = R"((?i)\b(error|failed|fatal)\b)";

struct SimConfig {
  std::string compile_cmd = "iverilog -g2012 -o {out} {sources}";
  std::string run_cmd = "vvp -n {out}";
  double timeout_seconds = 30.0;                   // simulation run
  std::optional<double> compile_timeout_seconds;   // defaults to timeout_seconds
  std::filesystem::path workdir_root;              // empty: <tmp>/creativ-sim
  corpus::PassRule default_pass_rule{std::string(kDefaultFailurePattern), std::nullopt};
  bool keep_failures = true;
  int jobs = 1;

  /// Throws InvalidConfig on a non-positive timeout or a template without
  /// its required placeholders, InvalidPattern on a bad default rule.
  void validate() const;
  std::filesystem::path effective_workdir_root() const;
};

enum class Verdict { Pass, FailCompile, FailSim, FailRule, Timeout };

std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view text);

struct FunctionalityResult {
  std::string case_id;
  Experiment experiment = Experiment::Completion;
  int sample_index = 0;
  Verdict verdict = Verdict::FailCompile;
  std::string log;
  double wall_time = 0.0;

  bool passed() const { return verdict == Verdict::Pass; }
};

/// True iff exit_ok, the failure pattern does not match the log, and the
/// pass pattern (when present) does.
bool apply_pass_rule(std::string_view log, bool exit_ok, const corpus::PassRule& rule);

/// Compiles and runs `candidate` against the case testbench (plus the
/// case's submodules) in workdir_root/<case>/<experiment>/<index>/. All
/// failures are encoded in the verdict; a missing simulator binary throws
/// SimulatorNotFound. The directory is removed on pass and kept on failure
/// when keep_failures is set.
FunctionalityResult check_functionality(std::string_view candidate, const corpus::PromptCase& c,
                                        const SimConfig& cfg, const WorkUnit& unit);

struct ValidationReport {
  std::size_t checked = 0;
  std::vector<FunctionalityResult> failures;  // golden solutions that did not pass

  bool ok() const { return failures.empty(); }
};

/// Checks every golden solution against its own testbench.
ValidationReport validate_corpus(const corpus::Corpus& corpus, const SimConfig& cfg);

/// Name of the first module declared in a testbench source.
std::string testbench_top(std::string_view testbench);

}  // namespace creativ::sim
