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

#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "creativ/corpus.hpp"
#include "creativ/experiment.hpp"
#include "creativ/llm_gateway.hpp"
#include "support/paths.hpp"

namespace creativ::testing {

// Every module text in the fixture corpus: goldens, submodules and the
// recorded responses assembled into candidates.
inline std::vector<std::string> fixture_sources() {
  corpus::Corpus c = corpus::load_corpus(kFixtureDir);
  std::vector<std::string> out;
  for (const auto& pc : c.cases) {
    out.push_back(pc.golden_solution);
    for (const auto& s : pc.submodules) out.push_back(s);
  }
  std::ifstream store(kFixtureDir / "replay.jsonl");
  std::string line;
  while (std::getline(store, line)) {
    auto j = nlohmann::json::parse(line);
    auto e = *creativ::parse_experiment(j.at("experiment").get<std::string>());
    std::string text = llm::trim_response(j.at("raw_text").get<std::string>()).text;
    out.push_back(corpus::candidate_source(e, *c.find(j.at("case_id").get<std::string>()), text));
  }
  return out;
}

}  // namespace creativ::testing
