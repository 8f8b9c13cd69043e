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

#include <random>
#include <string>

#include "creativ/hdl/dfg.hpp"
#include "creativ/similarity.hpp"

namespace {

using creativ::hdl::Dfg;

Dfg random_graph(int n, std::uint64_t seed) {
  static const char* pool[] = {"input:1", "input:8", "output:8", "wire", "reg", "const",
                               "op:and", "op:or", "op:xor", "op:add", "mux", "op:index"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> lab(0, 11), node(0, n - 1);
  Dfg g;
  for (int i = 0; i < n; ++i) g.nodes.push_back({i, pool[lab(rng)]});
  for (int e = 0; e < 2 * n; ++e) g.edges.emplace_back(node(rng), node(rng));
  return g;
}

void BM_WlSimilarity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Dfg a = random_graph(n, 1), b = random_graph(n, 2);
  creativ::similarity::KernelConfig cfg{static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(creativ::similarity::wl_similarity(a, b, cfg));
  state.SetComplexityN(n);
}
BENCHMARK(BM_WlSimilarity)->ArgsProduct({{16, 64, 256, 1024, 4096}, {3}})->Complexity();
BENCHMARK(BM_WlSimilarity)->ArgsProduct({{256}, {1, 2, 3, 5, 8}});

}  // namespace

BENCHMARK_MAIN();
