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

#include <benchmark/benchmark.h>

#include <string>

#include "creativ/hdl/dfg.hpp"
#include "creativ/hdl/parser.hpp"

namespace {

// A ripple of `n` full-adder stages written out as continuous assigns.
std::string adder_chain(int n) {
  std::string src = "module top_module(input [" + std::to_string(n - 1) + ":0] a, input [" +
                    std::to_string(n - 1) + ":0] b, input cin, output [" + std::to_string(n - 1) +
                    ":0] sum, output cout);\n  wire [" + std::to_string(n) + ":0] c;\n  assign c[0] = cin;\n";
  for (int i = 0; i < n; ++i) {
    std::string k = std::to_string(i), k1 = std::to_string(i + 1);
    src += "  assign sum[" + k + "] = a[" + k + "] ^ b[" + k + "] ^ c[" + k + "];\n";
    src += "  assign c[" + k1 + "] = (a[" + k + "] & b[" + k + "]) | (c[" + k + "] & (a[" + k + "] ^ b[" + k +
           "]));\n";
  }
  return src + "  assign cout = c[" + std::to_string(n) + "];\nendmodule\n";
}

void BM_Parse(benchmark::State& state) {
  std::string src = adder_chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(creativ::hdl::parse_module(src));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * src.size()));
}
BENCHMARK(BM_Parse)->Range(4, 512);

void BM_ExtractDfg(benchmark::State& state) {
  auto m = creativ::hdl::parse_module(adder_chain(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(creativ::hdl::extract_dfg(m));
}
BENCHMARK(BM_ExtractDfg)->Range(4, 512);

void BM_PrintModule(benchmark::State& state) {
  auto m = creativ::hdl::parse_module(adder_chain(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(creativ::hdl::print_module(m));
}
BENCHMARK(BM_PrintModule)->Range(4, 512);

}  // namespace

BENCHMARK_MAIN();
