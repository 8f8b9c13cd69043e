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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "creativ/corpus.hpp"
#include "creativ/error.hpp"
#include "creativ/hdl/parser.hpp"
#include "creativ/similarity.hpp"
#include "support/graphs.hpp"
#include "support/paths.hpp"
#include "support/wl_oracle.hpp"

namespace creativ::similarity {
namespace {

using hdl::Dfg;
using testing::make_graph;
using testing::oracle_similarity;
using testing::hand_built_pairs;
using testing::permuted;
using testing::random_graph;
using testing::random_module;
using testing::and_direct;
using testing::and_via_wire;
using testing::dff_reset_gated;
using testing::dff_reset_if;
using testing::mux2_gates;
using testing::mux2_ternary;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no creativ::Error thrown";
  return ErrorCode::Interrupted;
}

TEST(WlKernel, MatchesOracleOnHandBuiltPairs) {
  auto pairs = hand_built_pairs();
  ASSERT_GE(pairs.size(), 10u);
  for (const auto& p : pairs) {
    double expect = oracle_similarity(p.a, p.b, p.cfg.wl_iterations, p.cfg.label_scheme == LabelScheme::OpOnly);
    EXPECT_NEAR(wl_similarity(p.a, p.b, p.cfg), expect, 1e-9) << p.name;
  }
}

TEST(WlKernel, HandComputedValues) {
  // Disjoint label sets share no feature.
  EXPECT_EQ(wl_similarity(make_graph({"x"}, {}), make_graph({"y"}, {})), -1.0);
  // One node, no edges: four features per graph, all shared.
  EXPECT_EQ(wl_similarity(make_graph({"x"}, {}), make_graph({"x"}, {})), 1.0);
  // and_direct vs and_via_wire, h = 1. Features of the first graph:
  // input x2, output, op:and, (input) x2, (output<-and), (and<-input,input);
  // the second adds wire and (wire<-and) and has (output<-wire) instead.
  // ab = 4 + 1 + 1 + 4 + 1 = 11, aa = 4+1+1+4+1+1 = 12, bb = 4+1+1+1+4+1+1+1 = 14.
  KernelConfig h1{1, LabelScheme::Full};
  EXPECT_NEAR(wl_similarity(and_direct(), and_via_wire(), h1), 2 * 11 / std::sqrt(12.0 * 14.0) - 1, 1e-12);
}

TEST(WlKernel, Errors) {
  EXPECT_EQ(code_of([] { wl_similarity(Dfg{}, and_direct()); }), ErrorCode::EmptyGraph);
  EXPECT_EQ(code_of([] { wl_similarity(and_direct(), Dfg{}); }), ErrorCode::EmptyGraph);
  EXPECT_EQ(code_of([] { wl_similarity(and_direct(), and_direct(), {0, LabelScheme::Full}); }),
            ErrorCode::InvalidConfig);
}

TEST(WlKernel, OpOnlyIgnoresWidths) {
  Dfg wide = make_graph({"input:4", "output:4", "op:not"}, {{0, 2}, {2, 1}});
  Dfg narrow = make_graph({"input:1", "output:1", "op:not"}, {{0, 2}, {2, 1}});
  EXPECT_LT(wl_similarity(wide, narrow), 1.0);
  EXPECT_EQ(wl_similarity(wide, narrow, {3, LabelScheme::OpOnly}), 1.0);
}

TEST(WlKernelProperties, RandomGraphs) {
  std::mt19937_64 rng(20240611);
  const int kGraphs = 60;
  std::vector<Dfg> graphs;
  for (int i = 0; i < kGraphs; ++i) graphs.push_back(random_graph(rng));
  for (int i = 0; i < kGraphs; ++i) {
    const Dfg& a = graphs[i];
    const Dfg& b = graphs[(i + 1) % kGraphs];
    EXPECT_EQ(wl_similarity(a, a), 1.0) << i;
    double ab = wl_similarity(a, b);
    EXPECT_EQ(ab, wl_similarity(b, a)) << i;
    EXPECT_GE(ab, -1.0);
    EXPECT_LE(ab, 1.0);
    EXPECT_NEAR(ab, oracle_similarity(a, b), 1e-9) << i;
    // Isomorphic copies are indistinguishable.
    Dfg pa = permuted(a, rng);
    EXPECT_EQ(wl_similarity(a, pa), 1.0) << i;
    EXPECT_EQ(wl_similarity(pa, b), ab) << i;
    for (int h = 1; h <= 4; ++h) {
      KernelConfig cfg{h, h % 2 ? LabelScheme::Full : LabelScheme::OpOnly};
      double v = wl_similarity(a, b, cfg);
      EXPECT_EQ(v, wl_similarity(b, a, cfg));
      EXPECT_GE(v, -1.0);
      EXPECT_LE(v, 1.0);
      EXPECT_EQ(wl_similarity(b, b, cfg), 1.0);
    }
  }
}

TEST(WlKernelProperties, IdentifierRenamingInvariance) {
  std::vector<std::string> plain, renamed;
  for (int i = 0; i < 12; ++i) {
    plain.push_back("n" + std::to_string(i));
    renamed.push_back("sig_" + std::string(1, static_cast<char>('z' - i)) + "_q" + std::to_string(7 * i));
  }
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    std::string a_src = random_module(seed, plain);
    std::string r_src = random_module(seed, renamed);
    ASSERT_NE(a_src, r_src);
    Dfg a = hdl::extract_dfg(hdl::parse_module(a_src));
    Dfg r = hdl::extract_dfg(hdl::parse_module(r_src));
    Dfg other = hdl::extract_dfg(hdl::parse_module(random_module(seed + 1000, plain)));
    EXPECT_EQ(wl_similarity(a, r), 1.0) << a_src;
    EXPECT_EQ(wl_similarity(a, other), wl_similarity(r, other)) << a_src;
    EXPECT_EQ(wl_similarity(other, a), wl_similarity(other, r)) << a_src;
  }
}

class FixtureScoring : public ::testing::Test {
 protected:
  corpus::Corpus c = corpus::load_corpus(testing::kFixtureDir);
  WlKernelBackend backend;
};

TEST_F(FixtureScoring, BackendId) { EXPECT_EQ(backend.id(), "wl-kernel:h3:full"); }

TEST_F(FixtureScoring, GoldenScoresOne) {
  for (const auto& pc : c.cases) {
    auto out = score_against_golden(pc.golden_solution, pc, backend, {pc.id, Experiment::Completion, 2});
    ASSERT_TRUE(std::holds_alternative<SimilarityScore>(out)) << pc.id;
    const auto& s = std::get<SimilarityScore>(out);
    EXPECT_EQ(s.value, 1.0) << pc.id;
    EXPECT_EQ(s.backend_id, "wl-kernel:h3:full");
    EXPECT_EQ(s.case_id, pc.id);
    EXPECT_EQ(s.sample_index, 2);
  }
}

TEST_F(FixtureScoring, AlternativeMatchesHandBuiltGraph) {
  const auto& mux = *c.find("mux2");
  std::string alt = mux.interface_decl + "  assign out = (sel & b) | (~sel & a);\nendmodule\n";
  auto out = score_against_golden(alt, mux, backend);
  ASSERT_TRUE(std::holds_alternative<SimilarityScore>(out));
  EXPECT_NEAR(std::get<SimilarityScore>(out).value, oracle_similarity(mux2_gates(), mux2_ternary()), 1e-12);
}

TEST_F(FixtureScoring, OutOfSubsetIsUnscorable) {
  const auto& add = *c.find("adder2");
  std::string sv = add.interface_decl + "  logic [2:0] t;\n  assign t = a + b;\n  assign sum = t;\nendmodule\n";
  auto out = score_against_golden(sv, add, backend);
  ASSERT_TRUE(std::holds_alternative<Unscorable>(out));
  EXPECT_EQ(std::get<Unscorable>(out).reason, "UnsupportedConstruct: logic");
}

TEST_F(FixtureScoring, ElaborationUsesSubmoduleLibrary) {
  const auto& fa = *c.find("full_adder");
  auto g = candidate_graph(fa.golden_solution, fa);
  ASSERT_TRUE(std::holds_alternative<Dfg>(g));
  const Dfg& dfg = std::get<Dfg>(g);
  EXPECT_EQ(std::count_if(dfg.nodes.begin(), dfg.nodes.end(),
                          [](const auto& n) { return n.label == "instance:half_adder"; }),
            2);
}

TEST_F(FixtureScoring, BatchMakesOneCallInOrder) {
  struct Counting : SimilarityBackend {
    int calls = 0;
    std::string id() const override { return "counting"; }
    std::vector<double> score(std::span<const ScoringPair> pairs) override {
      ++calls;
      std::vector<double> out;
      for (std::size_t i = 0; i < pairs.size(); ++i) out.push_back(-0.5 + 0.25 * static_cast<double>(i));
      return out;
    }
  } counting;
  const auto& mux = *c.find("mux2");
  const auto& add = *c.find("adder2");
  std::vector<ScoreRequest> reqs = {
      {{"mux2", Experiment::Completion, 0}, mux.golden_solution, &mux},
      {{"adder2", Experiment::Completion, 1}, "module top_module(input a); logic x; endmodule", &add},
      {{"adder2", Experiment::Rewrite, 2}, add.golden_solution, &add},
  };
  auto out = score_batch(reqs, counting);
  EXPECT_EQ(counting.calls, 1);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(std::get<SimilarityScore>(out[0]).value, -0.5);
  EXPECT_TRUE(std::holds_alternative<Unscorable>(out[1]));
  EXPECT_EQ(std::get<SimilarityScore>(out[2]).value, -0.25);
  EXPECT_EQ(std::get<SimilarityScore>(out[2]).experiment, Experiment::Rewrite);
}

// Adapter doubles: python scripts answering the line protocol.
class Adapter : public ::testing::Test {
 protected:
  testing::TempDir dir;

  std::string script(const std::string& name, const std::string& python) {
    auto path = dir / name;
    testing::write_script(path, "exec python3 -c '\nimport json, sys\nreq = json.loads(sys.stdin.readline())\n" +
                                    python + "\n'\n");
    return path.string();
  }

  std::vector<AdapterPair> pairs = {{"p0", "module a; endmodule", "module b; endmodule"},
                                    {"p1", "module c; endmodule", "module d; endmodule"}};
};

TEST_F(Adapter, ConstantHalf) {
  auto cmd = script("half", "print(json.dumps({\"scores\": [{\"id\": p[\"id\"], \"score\": 0.5} for p in req[\"pairs\"]]}))");
  auto out = adapter_similarity(pairs, cmd);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], (std::pair<std::string, double>{"p0", 0.5}));
  EXPECT_EQ(out[1], (std::pair<std::string, double>{"p1", 0.5}));
}

TEST_F(Adapter, EchoesModulesThroughRequest) {
  // Scores 1 when module_a and module_b are equal, else -1, in reverse order.
  auto cmd = script("eq", "print(json.dumps({\"scores\": [{\"id\": p[\"id\"], \"score\": 1 if p[\"module_a\"] == p[\"module_b\"] else -1} for p in reversed(req[\"pairs\"])]}))");
  std::vector<AdapterPair> ps = {{"x", "m", "m"}, {"y", "m", "n"}};
  auto out = adapter_similarity(ps, cmd);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], (std::pair<std::string, double>{"x", 1.0}));
  EXPECT_EQ(out[1], (std::pair<std::string, double>{"y", -1.0}));
}

TEST_F(Adapter, OutOfRange) {
  auto cmd = script("big", "print(json.dumps({\"scores\": [{\"id\": p[\"id\"], \"score\": 1.7} for p in req[\"pairs\"]]}))");
  EXPECT_EQ(code_of([&] { adapter_similarity(pairs, cmd); }), ErrorCode::AdapterRangeError);
}

TEST_F(Adapter, NonzeroExit) {
  auto cmd = script("fail", "sys.stderr.write(\"model missing\\n\"); sys.exit(1)");
  try {
    adapter_similarity(pairs, cmd);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AdapterCrash);
    EXPECT_NE(std::string(e.what()).find("model missing"), std::string::npos);
  }
}

TEST_F(Adapter, ProtocolViolations) {
  auto garbage = script("garbage", "print(\"not json\")");
  EXPECT_EQ(code_of([&] { adapter_similarity(pairs, garbage); }), ErrorCode::AdapterProtocolError);
  auto missing = script("missing", "print(json.dumps({\"scores\": [{\"id\": \"p0\", \"score\": 0.1}]}))");
  EXPECT_EQ(code_of([&] { adapter_similarity(pairs, missing); }), ErrorCode::AdapterProtocolError);
  auto extra = script("extra",
                      "print(json.dumps({\"scores\": [{\"id\": i, \"score\": 0.1} for i in [\"p0\", \"p1\", \"p9\"]]}))");
  EXPECT_EQ(code_of([&] { adapter_similarity(pairs, extra); }), ErrorCode::AdapterProtocolError);
  auto dup = script("dup", "print(json.dumps({\"scores\": [{\"id\": i, \"score\": 0.1} for i in [\"p0\", \"p0\"]]}))");
  EXPECT_EQ(code_of([&] { adapter_similarity(pairs, dup); }), ErrorCode::AdapterProtocolError);
  auto silent = script("silent", "pass");
  EXPECT_EQ(code_of([&] { adapter_similarity(pairs, silent); }), ErrorCode::AdapterProtocolError);
}

TEST_F(Adapter, LaunchFailureAndTimeout) {
  EXPECT_EQ(code_of([&] { adapter_similarity(pairs, (dir / "does-not-exist").string()); }), ErrorCode::AdapterCrash);
  auto slow = script("slow", "import time; time.sleep(20)");
  EXPECT_EQ(code_of([&] { adapter_similarity(pairs, slow, 0.5); }), ErrorCode::AdapterCrash);
}

TEST_F(Adapter, BackendScoresFixturePairs) {
  auto cmd = script("half", "print(json.dumps({\"scores\": [{\"id\": p[\"id\"], \"score\": 0.5} for p in req[\"pairs\"]]}))");
  AdapterBackend backend(cmd);
  corpus::Corpus c = corpus::load_corpus(testing::kFixtureDir);
  const auto& mux = *c.find("mux2");
  auto out = score_against_golden(mux.golden_solution, mux, backend);
  ASSERT_TRUE(std::holds_alternative<SimilarityScore>(out));
  EXPECT_EQ(std::get<SimilarityScore>(out).value, 0.5);
}

}  // namespace
}  // namespace creativ::similarity
