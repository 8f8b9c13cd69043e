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

// Evaluation corpus: a manifest.json plus per-case Verilog sources.
//
//   [
//     {"id": "mux2", "kind": "single", "description": "...",
//      "interface_decl": "module top_module(...);",
//      "golden": "mux2/golden.v", "testbench": "mux2/tb.v",
//      "submodules": [],
//      "pass_rule": {"failure_pattern": "...", "pass_pattern": "..."}},
//     ...
//   ]
//
// Paths are relative to the manifest directory. `submodules` is required
// and non-empty for kind "multi", empty or absent for kind "single".

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "creativ/experiment.hpp"

namespace creativ::corpus {

enum class CaseKind { Single, Multi };

struct PassRule {
  std::string failure_pattern;
  std::optional<std::string> pass_pattern;

  bool operator==(const PassRule&) const = default;
};

struct PromptCase {
  std::string id;
  CaseKind kind = CaseKind::Single;
  std::string description;
  std::string interface_decl;
  std::string golden_solution;
  std::string testbench;
  std::vector<std::string> submodules;  // full sources, manifest order
  std::optional<PassRule> pass_rule;

  /// Module name declared by interface_decl.
  std::string top_module_name() const;

  bool operator==(const PromptCase&) const = default;
};

struct Corpus {
  std::vector<PromptCase> cases;
  std::filesystem::path source_path;
  std::size_t p_single = 0;
  std::size_t p_multi = 0;

  const PromptCase* find(std::string_view id) const;

  bool operator==(const Corpus&) const = default;
};

/// Reads `dir/manifest.json` and every file it references. Fails with
/// MissingFile, DuplicateId, MalformedManifest, InvalidPattern or
/// SubsetParseError (golden or submodule outside the parser subset).
Corpus load_corpus(const std::filesystem::path& dir);

/// Instruction text for the rewrite and elaboration prompts. Rendered as
/// `//` comment lines.
struct PromptTemplates {
  std::string rewrite_instruction =
      "The Verilog module below is a correct implementation of the description.\n"
      "Write a different implementation of the same module. Keep the module\n"
      "name and ports unchanged and preserve its behavior.";
  std::string elaboration_instruction =
      "Using the modules defined above, implement the following top module.\n"
      "Instantiate the provided modules where they help.";
};

/// Description as `//` comments followed by the interface declaration; the
/// expected continuation is the module body. WrongKind for multi cases.
std::string build_completion_prompt(const PromptCase& c);

/// Instruction, description and the full golden solution; the expected
/// continuation is a complete module. WrongKind for multi cases.
std::string build_rewrite_prompt(const PromptCase& c, const PromptTemplates& templates = {});

/// Every submodule source, then instruction, description and interface
/// declaration; the expected continuation is the top module body.
/// WrongKind unless the case is multi with at least one submodule.
std::string build_elaboration_prompt(const PromptCase& c, const PromptTemplates& templates = {});

std::string build_prompt(Experiment e, const PromptCase& c, const PromptTemplates& templates = {});

/// The Verilog module to simulate for a trimmed response. Completion and
/// elaboration responses continue the interface declaration, so it is
/// prepended unless the response already starts its own module header.
/// Markdown code fences are dropped.
std::string candidate_source(Experiment e, const PromptCase& c, std::string_view trimmed_response);

/// Names of the modules defined by the case's submodule sources.
std::vector<std::string> submodule_names(const PromptCase& c);

/// Experiments that apply to a case kind.
bool experiment_applies(Experiment e, CaseKind kind);

}  // namespace creativ::corpus
