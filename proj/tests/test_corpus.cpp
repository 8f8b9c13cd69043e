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

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "creativ/corpus.hpp"
#include "creativ/error.hpp"
#include "support/paths.hpp"

namespace creativ {
namespace {

using corpus::CaseKind;
using testing::TempDir;
using testing::write_text;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no creativ::Error thrown";
  return ErrorCode::Interrupted;
}

// Minimal valid single case on disk.
void write_case(const std::filesystem::path& dir, const std::string& id, const std::string& golden) {
  write_text(dir / id / "golden.v", golden);
  write_text(dir / id / "tb.v", "module tb;\nendmodule\n");
}

nlohmann::json entry(const std::string& id) {
  return {{"id", id},
          {"kind", "single"},
          {"description", "An AND gate."},
          {"interface_decl", "module top_module(input a, input b, output out);\n"},
          {"golden", id + "/golden.v"},
          {"testbench", id + "/tb.v"}};
}

const char* kAnd = "module top_module(input a, input b, output out);\n  assign out = a & b;\nendmodule\n";

TEST(Corpus, LoadsFixture) {
  corpus::Corpus c = corpus::load_corpus(testing::kFixtureDir);
  EXPECT_EQ(c.cases.size(), 8u);
  EXPECT_EQ(c.p_single, 6u);
  EXPECT_EQ(c.p_multi, 2u);
  const corpus::PromptCase* fa = c.find("full_adder");
  ASSERT_NE(fa, nullptr);
  EXPECT_EQ(fa->kind, CaseKind::Multi);
  EXPECT_EQ(fa->submodules.size(), 1u);
  EXPECT_EQ(fa->top_module_name(), "top_module");
  EXPECT_EQ(corpus::submodule_names(*c.find("mux4_hier")), (std::vector<std::string>{"mux2", "inverter"}));
  const corpus::PromptCase* m4 = c.find("mux4_case");
  ASSERT_TRUE(m4->pass_rule.has_value());
  EXPECT_EQ(m4->pass_rule->failure_pattern, "Mismatches: [1-9]");
  EXPECT_EQ(c.find("nope"), nullptr);
}

TEST(Corpus, LoadIsDeterministic) {
  EXPECT_EQ(corpus::load_corpus(testing::kFixtureDir), corpus::load_corpus(testing::kFixtureDir));
}

TEST(Corpus, MissingManifest) {
  TempDir dir;
  EXPECT_EQ(code_of([&] { corpus::load_corpus(dir.path()); }), ErrorCode::MissingFile);
}

TEST(Corpus, MissingReferencedFile) {
  TempDir dir;
  write_text(dir / "manifest.json", nlohmann::json::array({entry("and")}).dump());
  EXPECT_EQ(code_of([&] { corpus::load_corpus(dir.path()); }), ErrorCode::MissingFile);
}

TEST(Corpus, DuplicateId) {
  TempDir dir;
  write_case(dir.path(), "and", kAnd);
  write_text(dir / "manifest.json", nlohmann::json::array({entry("and"), entry("and")}).dump());
  EXPECT_EQ(code_of([&] { corpus::load_corpus(dir.path()); }), ErrorCode::DuplicateId);
}

TEST(Corpus, MalformedManifests) {
  TempDir dir;
  write_case(dir.path(), "and", kAnd);
  auto expect_malformed = [&](const std::string& text) {
    write_text(dir / "manifest.json", text);
    EXPECT_EQ(code_of([&] { corpus::load_corpus(dir.path()); }), ErrorCode::MalformedManifest) << text;
  };
  expect_malformed("{not json");
  expect_malformed("{}");
  expect_malformed("[1]");
  auto e = entry("and");
  e.erase("description");
  expect_malformed(nlohmann::json::array({e}).dump());
  e = entry("and");
  e["kind"] = "double";
  expect_malformed(nlohmann::json::array({e}).dump());
  e = entry("and");
  e["kind"] = "multi";
  expect_malformed(nlohmann::json::array({e}).dump());
  e = entry("and");
  e["interface_decl"] = "wire x;";
  expect_malformed(nlohmann::json::array({e}).dump());
}

TEST(Corpus, BadPassRulePattern) {
  TempDir dir;
  write_case(dir.path(), "and", kAnd);
  auto e = entry("and");
  e["pass_rule"] = {{"failure_pattern", "(unclosed"}};
  write_text(dir / "manifest.json", nlohmann::json::array({e}).dump());
  EXPECT_EQ(code_of([&] { corpus::load_corpus(dir.path()); }), ErrorCode::InvalidPattern);
}

TEST(Corpus, GoldenOutsideSubset) {
  TempDir dir;
  write_case(dir.path(), "and",
             "module top_module(input a, input b, output out);\n  genvar i;\n"
             "  generate for (i = 0; i < 1; i = i + 1) begin : g\n    assign out = a & b;\n  end endgenerate\n"
             "endmodule\n");
  write_text(dir / "manifest.json", nlohmann::json::array({entry("and")}).dump());
  EXPECT_EQ(code_of([&] { corpus::load_corpus(dir.path()); }), ErrorCode::SubsetParseError);
}

TEST(Corpus, GoldenMustDefineTop) {
  TempDir dir;
  write_case(dir.path(), "and", "module other(input a, output y);\n  assign y = a;\nendmodule\n");
  write_text(dir / "manifest.json", nlohmann::json::array({entry("and")}).dump());
  EXPECT_EQ(code_of([&] { corpus::load_corpus(dir.path()); }), ErrorCode::SubsetParseError);
}

class Prompts : public ::testing::Test {
 protected:
  corpus::Corpus c = corpus::load_corpus(testing::kFixtureDir);
};

TEST_F(Prompts, CompletionEndsWithInterface) {
  const auto& mux = *c.find("mux2");
  std::string p = corpus::build_completion_prompt(mux);
  EXPECT_EQ(p.rfind("//", 0), 0u);
  EXPECT_TRUE(p.ends_with(mux.interface_decl));
  EXPECT_EQ(p.find("assign"), std::string::npos);
}

TEST_F(Prompts, RewriteCarriesGolden) {
  const auto& mux = *c.find("mux2");
  std::string p = corpus::build_rewrite_prompt(mux);
  EXPECT_NE(p.find(mux.golden_solution), std::string::npos);
  EXPECT_NE(p.find("// Write a different implementation"), std::string::npos);
}

TEST_F(Prompts, ElaborationListsSubmodulesFirst) {
  const auto& hier = *c.find("mux4_hier");
  std::string p = corpus::build_elaboration_prompt(hier);
  EXPECT_EQ(p.find("module mux2"), 0u);
  EXPECT_LT(p.find("module inverter"), p.find("module top_module"));
  EXPECT_TRUE(p.ends_with(hier.interface_decl));
}

TEST_F(Prompts, KindsAreEnforced) {
  EXPECT_EQ(code_of([&] { corpus::build_completion_prompt(*c.find("full_adder")); }), ErrorCode::WrongKind);
  EXPECT_EQ(code_of([&] { corpus::build_rewrite_prompt(*c.find("mux4_hier")); }), ErrorCode::WrongKind);
  EXPECT_EQ(code_of([&] { corpus::build_elaboration_prompt(*c.find("mux2")); }), ErrorCode::WrongKind);
  EXPECT_TRUE(corpus::experiment_applies(Experiment::Completion, CaseKind::Single));
  EXPECT_FALSE(corpus::experiment_applies(Experiment::Elaboration, CaseKind::Single));
  EXPECT_TRUE(corpus::experiment_applies(Experiment::Elaboration, CaseKind::Multi));
  EXPECT_FALSE(corpus::experiment_applies(Experiment::Rewrite, CaseKind::Multi));
}

TEST_F(Prompts, CustomTemplate) {
  corpus::PromptTemplates t;
  t.rewrite_instruction = "Line one.\nLine two.";
  std::string p = corpus::build_rewrite_prompt(*c.find("dff"), t);
  EXPECT_EQ(p.rfind("// Line one.\n// Line two.\n", 0), 0u);
}

TEST_F(Prompts, CandidateSource) {
  const auto& mux = *c.find("mux2");
  EXPECT_EQ(corpus::candidate_source(Experiment::Completion, mux, "  assign out = a;\nendmodule"),
            mux.interface_decl + "  assign out = a;\nendmodule");
  // A response that restates the header is used as is.
  std::string full = "module top_module(input a, input b, input sel, output out);\nendmodule";
  EXPECT_EQ(corpus::candidate_source(Experiment::Completion, mux, "Sure:\n" + full), full);
  EXPECT_EQ(corpus::candidate_source(Experiment::Rewrite, mux, "```verilog\n" + full + "\n```"), full + "\n");
  // A header mentioned only in a comment does not count.
  EXPECT_EQ(corpus::candidate_source(Experiment::Completion, mux, "  // module m\nendmodule"),
            mux.interface_decl + "  // module m\nendmodule");
}

}  // namespace
}  // namespace creativ
