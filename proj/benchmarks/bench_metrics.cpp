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
#include <vector>

#include "creativ/metrics.hpp"

namespace {

using creativ::metrics::PromptOutcome;

std::vector<PromptOutcome> outcomes(int prompts, int t) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> score(-1.0, 1.0);
  std::vector<PromptOutcome> out(prompts);
  for (int p = 0; p < prompts; ++p) {
    out[p].case_id = "case" + std::to_string(p);
    out[p].t = t;
    for (int i = 0; i < t; ++i) {
      out[p].functional_indices.push_back(i);
      out[p].scores.push_back(score(rng));
    }
  }
  return out;
}

void BM_Fluency(benchmark::State& state) {
  const int t = static_cast<int>(state.range(1));
  auto o = outcomes(static_cast<int>(state.range(0)), t);
  for (auto _ : state) benchmark::DoNotOptimize(creativ::metrics::compute_fluency(o, t));
}
BENCHMARK(BM_Fluency)->ArgsProduct({{111, 1000}, {10, 100}});

void BM_Flexibility(benchmark::State& state) {
  auto o = outcomes(static_cast<int>(state.range(0)), 10);
  for (auto _ : state) benchmark::DoNotOptimize(creativ::metrics::compute_flexibility(o));
}
BENCHMARK(BM_Flexibility)->Arg(111)->Arg(1000);

void BM_UniqueCountPairwise(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> score(-1.0, 1.0);
  std::vector<std::vector<double>> sim(t, std::vector<double>(t, 1.0));
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < i; ++j) sim[i][j] = sim[j][i] = score(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(creativ::metrics::unique_count_pairwise(sim));
}
BENCHMARK(BM_UniqueCountPairwise)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
